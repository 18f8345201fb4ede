"""Operator-facing surface: CLI, live teleoperation server, artifacts."""
