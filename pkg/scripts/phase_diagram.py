"""Scan the (d, tau) plane and render the tongue phase diagram.

Defaults reproduce the laboratory-slice picture: 200x200 cells over
(-0.9, 0.9) x (0.5, 8] at q_max = 50, with the closed-form (2,3) boundary
curves drawn on top.  Exact arithmetic throughout, so reruns are
byte-identical.
"""

import argparse
import os
import time

from wavetrap import closed_form_oracle, render_phase_diagram, scan
from wavetrap.reports import write_scan_csv
from wavetrap.scalar import exact


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=200)
    ap.add_argument("--qmax", type=int, default=50)
    ap.add_argument("--workers", type=int,
                    default=int(os.environ.get("WAVETRAP_WORKERS", "0")) or os.cpu_count())
    ap.add_argument("--outdir", default="out")
    args = ap.parse_args()

    os.makedirs(args.outdir, exist_ok=True)
    t0 = time.time()
    records = scan(
        (exact(-9, 10), exact(9, 10)),
        (exact(1, 2), exact(8)),
        args.grid,
        q_max=args.qmax,
        workers=args.workers,
    )
    elapsed = time.time() - t0

    config = {"grid": args.grid, "qmax": args.qmax,
              "d": ["-9/10", "9/10"], "tau": ["1/2", "8"]}
    csv_path = os.path.join(args.outdir, "phase_diagram.csv")
    write_scan_csv(records, csv_path, config)

    overlays = []
    for p, q in ((2, 3), (1, 4)):
        pts_lo, pts_hi = [], []
        for i in range(97):
            d = -0.9 + 1.8 * i / 96
            lo, hi = closed_form_oracle(p, q, d)
            pts_lo.append((d, lo))
            pts_hi.append((d, hi))
        overlays.append((f"{p}/{q} lo", pts_lo))
        overlays.append((f"{p}/{q} hi", pts_hi))
    svg_path = os.path.join(args.outdir, "phase_diagram.svg")
    with open(svg_path, "w", encoding="utf-8") as fh:
        fh.write(render_phase_diagram(records, overlays))

    certified = sum(1 for r in records if r.certified)
    print(f"{len(records)} cells, {certified} certified ({certified / len(records):.1%}) "
          f"in {elapsed:.1f}s")
    print(f"wrote {csv_path} and {svg_path}")


if __name__ == "__main__":
    main()
