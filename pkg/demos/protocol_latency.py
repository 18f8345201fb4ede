"""
One byte behind: accessory-pin latency in the shipped firmware
==============================================================

The on-board controller reads one command byte per loop and runs a fixed
cycle: stop the drive, write the mower/pump output pins from the flags as
they stood *before* this byte, then decode the byte. The decode step is
what updates the flags — so a flag byte reaches its pin only when the NEXT
byte arrives, and during radio silence the pins never change at all.

FAITHFUL mode reproduces that behavior exactly (including the fixed
full-power PWM). CORRECTED mode decodes flag bytes before the pin write and
adds a working speed setting. This demo prints the same byte stream through
both and marks every place they disagree.

Run it directly: ``python3 demos/protocol_latency.py``
"""

from agrisim import ControllerState, Mode, classify_byte, set_speed, step_controller

STREAM = [ord(c) for c in "WUFSwS"]


def trace(mode: Mode) -> list[tuple]:
    rows = []
    state = ControllerState(mode=mode)
    for b in STREAM:
        state, _drive = step_controller(state, b)
        rows.append((chr(b), classify_byte(b), state.motion.value,
                     state.mower_flag, state.mower_pin,
                     state.pump_flag, state.pump_pin))
    return rows


faithful = trace(Mode.FAITHFUL)
corrected = trace(Mode.CORRECTED)

print("byte stream:", " ".join(chr(b) for b in STREAM))
print()
header = (f"{'byte':<6}{'meaning':<11}{'motion':<10}"
          f"{'mower flag/pin':<16}{'pump flag/pin':<15}")
for name, rows in (("FAITHFUL", faithful), ("CORRECTED", corrected)):
    print(f"--- {name} ---")
    print(header)
    for (ch, label, motion, mf, mp, pf, pp), other in zip(
            rows, corrected if name == "FAITHFUL" else faithful):
        diff = "   <- differs" if (ch, label, motion, mf, mp, pf, pp) != other else ""
        onoff = lambda f: "on " if f else "off"
        print(f"{ch!r:<6}{label:<11}{motion:<10}"
              f"{onoff(mf)} / {onoff(mp):<10}{onoff(pf)} / {onoff(pp)}{diff}")
    print()

# Things to notice in the FAITHFUL table:
#  * 'W' latches the mower FLAG but the PIN stays off until 'U' arrives.
#  * every byte stops the drive first, so 'F' is what actually starts motion
#    and the later 'w' stops it again (flag bytes are also bytes).
#  * after the final 'S' both pins match their flags — each toggle needed
#    one extra byte to flush through.

# ---------------------------------------------------------------------------
# Radio silence: no bytes, no pin updates. The flag set by the last byte of
# a burst stays invisible until traffic resumes.
# ---------------------------------------------------------------------------
state = ControllerState(mode=Mode.FAITHFUL)
state, _ = step_controller(state, ord("U"))
print(f"after a burst ending in 'U': pump flag={state.pump_flag}, "
      f"pin={state.pump_pin} (link then goes quiet -> pin stays off)")
state, _ = step_controller(state, ord("S"))
print(f"next byte after the gap:     pump flag={state.pump_flag}, "
      f"pin={state.pump_pin}")

# ---------------------------------------------------------------------------
# Speed: the shipped firmware always drives at PWM 255; the app's slider is
# decorative. CORRECTED mode makes it real.
# ---------------------------------------------------------------------------
state = ControllerState(mode=Mode.CORRECTED)
state = set_speed(state, 128)
state, drive = step_controller(state, ord("F"))
print(f"\nCORRECTED at pwm 128: channel fraction "
      f"{drive.m1.signed_fraction():+.4f} (128/255 = {128/255:+.4f})")
try:
    set_speed(ControllerState(mode=Mode.FAITHFUL), 128)
except RuntimeError as e:
    print(f"FAITHFUL refuses a speed change: {e}")
