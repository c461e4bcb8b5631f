"""Regenerate the bundled synthetic sample panel.

The panel is fully synthetic (no real statistics): 19 entities with
GDP-per-capita-like trajectories over 1970-2011, built from a seeded PCG64
stream. Output: src/plcsnet/data/sample_panel.csv
"""

from pathlib import Path

import numpy as np

from plcsnet.ingest import SeriesPanel, save_panel

CODES = ["AU", "AT", "BE", "CA", "DN", "FR", "DE", "GB", "GR", "NL",
         "IT", "IR", "JP", "LU", "PL", "PT", "SE", "SW", "US"]
YEARS = range(1970, 2012)
SEED = 20121


def build() -> SeriesPanel:
    rng = np.random.Generator(np.random.PCG64(SEED))
    t = np.arange(len(YEARS), dtype=float)
    common = np.cumsum(rng.normal(0.025, 0.03, size=t.size))
    cols = []
    for _ in CODES:
        level = rng.uniform(1500.0, 6000.0)
        drift = rng.normal(0.0, 0.012)
        own = np.cumsum(rng.normal(drift, 0.02, size=t.size))
        cols.append(level * np.exp(common + own))
    values = np.round(np.column_stack(cols), 2)
    return SeriesPanel(CODES, list(YEARS), values)


if __name__ == "__main__":
    out = Path(__file__).resolve().parents[1] / "src" / "plcsnet" / "data" / "sample_panel.csv"
    save_panel(build(), out)
    print(f"wrote {out}")
