#!/usr/bin/env python3
"""Generate the bundled synthetic plot table (data/example/plots.csv).

Plots are drawn from four latent vegetation zones. Each zone shifts the
environmental variables and the species presence probabilities, so that
mining the table yields a handful of strong rules. Output is a pure function
of --seed.
"""

import argparse
import csv
import pathlib

import numpy as np

# zone -> (weight, bio1 mean, bio4 mean, bio12 mean, bio15 mean, pH mean, canopy mean, lithology classes)
ZONES = {
    "alpine": (0.25, 5.0, 680.0, 1350.0, 42.0, 52.0, 30.0, (3, 12)),
    "beech": (0.25, 8.5, 630.0, 1150.0, 32.0, 60.0, 26.0, (12, 5)),
    "thermophilous": (0.30, 11.0, 690.0, 850.0, 24.0, 70.0, 14.0, (12, 7)),
    "mediterranean": (0.20, 14.5, 560.0, 700.0, 55.0, 63.0, 10.0, (7, 9)),
}

# species -> presence probability per zone (alpine, beech, thermophilous, mediterranean)
SPECIES = {
    "PICABI": (0.85, 0.20, 0.02, 0.00),
    "LARDEC": (0.60, 0.05, 0.00, 0.00),
    "ABIALB": (0.40, 0.30, 0.02, 0.00),
    "PINCEM": (0.20, 0.00, 0.00, 0.00),
    "FAGSYL": (0.25, 0.85, 0.15, 0.02),
    "ACEPSE": (0.10, 0.45, 0.20, 0.02),
    "OSTCAR": (0.00, 0.15, 0.75, 0.10),
    "FRAORN": (0.00, 0.15, 0.80, 0.25),
    "QUEPUB": (0.00, 0.05, 0.65, 0.30),
    "ACEOPA": (0.00, 0.10, 0.35, 0.05),
    "QUECER": (0.00, 0.05, 0.30, 0.20),
    "CASSAT": (0.00, 0.25, 0.25, 0.05),
    "QUEILE": (0.00, 0.00, 0.03, 0.80),
    "PHILAT": (0.00, 0.00, 0.00, 0.35),
    "ARBUNE": (0.00, 0.00, 0.02, 0.40),
    "BETPEN": (0.15, 0.05, 0.02, 0.00),
}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--plots", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=2015)
    parser.add_argument("--missing", type=int, default=6, help="cells blanked to exercise row dropping")
    parser.add_argument("--out", type=pathlib.Path, default=pathlib.Path("data/example/plots.csv"))
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    names = list(ZONES)
    weights = np.array([ZONES[z][0] for z in names])
    zone_idx = rng.choice(len(names), size=args.plots, p=weights / weights.sum())

    header = ["idplot"] + [f"P_{s}" for s in SPECIES] + [
        "C_WC0001", "C_WC0004", "C_WC0008", "C_WC0012", "C_WC0015", "C_ARIIND",
        "S_SGWC33", "S_SGPHWA", "S_ITLITO", "E_CANHEI", "E_MDVIME", "E_SDVIME",
    ]
    rows = []
    for i, z in enumerate(zone_idx):
        _, t, seas, prec, pseas, ph, canopy, litho = ZONES[names[z]]
        bio1 = rng.normal(t, 1.0)
        bio4 = rng.normal(seas, 30.0)
        bio8 = bio1 + rng.normal(6.0, 1.5)
        bio12 = max(300.0, rng.normal(prec, 180.0))
        bio15 = min(95.0, max(5.0, rng.normal(pseas, 6.0)))
        arid = bio12 / (bio1 + 10.0)
        wc33 = rng.normal(300.0 + 4.0 * bio15, 25.0)
        sgph = min(81.0, max(48.0, rng.normal(ph, 5.0)))
        lith = litho[0] if rng.random() < 0.7 else int(rng.integers(1, 16))
        canhei = min(41.9, max(0.0, rng.normal(canopy, 5.0)))
        ndvi_mean = min(0.95, max(0.05, rng.normal(0.35 + canopy / 60.0, 0.06)))
        ndvi_sd = max(0.005, rng.normal(0.08 - canopy / 800.0, 0.015))
        presence = [int(rng.random() < p[z]) for p in SPECIES.values()]
        rows.append([f"{i + 1:05d}", *presence,
                     f"{bio1:.2f}", f"{bio4:.1f}", f"{bio8:.2f}", f"{bio12:.0f}", f"{bio15:.1f}",
                     f"{arid:.2f}", f"{wc33:.1f}", f"{sgph:.1f}", str(lith), f"{canhei:.1f}",
                     f"{ndvi_mean:.3f}", f"{ndvi_sd:.4f}"])

    numeric_cols = range(len(SPECIES) + 1, len(header))
    for _ in range(args.missing):
        r = int(rng.integers(0, len(rows)))
        c = int(rng.choice(list(numeric_cols)))
        rows[r][c] = ""

    args.out.parent.mkdir(parents=True, exist_ok=True)
    with args.out.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


if __name__ == "__main__":
    main()
