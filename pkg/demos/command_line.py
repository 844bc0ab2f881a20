"""Driving the command-line front end from Python.

The same calls are available as ``resdil figure fig2 --grid 20`` and so on.
"""

from resdil import cli

text = cli.run_figure("fig2", grid=6)
print(text)

_, res = cli.run_sweep("thermal", T=0.3, p=0.9, grid=50)
print(f"thermal sweep argmax {res.argmax_param:.4f}")

report = cli.run_selftest()
print(report.render())
