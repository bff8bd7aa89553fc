"""End-to-end experiment pipeline: config -> run -> CSV.

Writes a small figure1-style run into ./results; the frontend plot tool
(frontend/) renders the same CSV into an SVG chart.
"""

from eigenent.experiments import ExperimentConfig, run_figure1, write_table

cfg = ExperimentConfig(experiment="figure1", n_list=(6, 8), seed=1, threads=2)
table = run_figure1(cfg)
path = write_table(table, "results")
print(f"wrote {len(table.rows)} rows to {path}")
print("render it with: node frontend/dist/cli.js --experiment figure1 "
      f"--in {path.parent} --out figure1.svg")
