"""Sweep the rotation number along the tau family and write the staircase.

The certified plateaus form the devil's staircase; the CSV keeps both the
certified rationals and the enclosure intervals of the unresolved points,
so plateau widths and gaps can be read off directly.
"""

import argparse
import os

from wavetrap import family_from_name, staircase
from wavetrap.reports import write_staircase_csv
from wavetrap.rotation import Certified
from wavetrap.scalar import exact, parse_scalar, scalar_str


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d", default="0", help="fixed asymmetry (exact rational)")
    ap.add_argument("--u-lo", dest="u_lo", default="3/2")
    ap.add_argument("--u-hi", dest="u_hi", default="13/2")
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--qmax", type=int, default=200)
    ap.add_argument("--workers", type=int,
                    default=int(os.environ.get("WAVETRAP_WORKERS", "0")) or os.cpu_count())
    ap.add_argument("--out", default="out/staircase.csv")
    args = ap.parse_args()

    family = family_from_name("maas-tau", d=parse_scalar(args.d))
    u_lo, u_hi = parse_scalar(args.u_lo), parse_scalar(args.u_hi)
    records = staircase(family, u_lo, u_hi, args.samples,
                        q_max=args.qmax, workers=args.workers)

    os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
    config = {"family": "maas-tau", "d": args.d,
              "u_lo": scalar_str(u_lo), "u_hi": scalar_str(u_hi),
              "samples": args.samples, "qmax": args.qmax}
    write_staircase_csv(records, args.out, config)

    certified = [r for r in records if isinstance(r.result, Certified)]
    qs = sorted({r.result.q for r in certified})
    print(f"{len(records)} samples, {len(certified)} certified; denominators seen: {qs[:20]}")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
