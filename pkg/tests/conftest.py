# anchors pytest's rootdir and puts this directory on sys.path so test
# helpers (reference_controller) import plainly
