"""Run the simulation tables and compare them with the published values.

Usage: python3 scripts/reproduce_tables.py [--tables 1 3 4] [--replicates 2000] [--outdir out]

Each table is written to <outdir>/T<k>.csv; a comparison with the reference
values in ``linnik.reference`` is printed per cell.
"""

import argparse
import pathlib
import time

from linnik import reference as ref
from linnik.montecarlo import run_table, table_config

METHODS = ("MoM", "FracMoment", "CharFn")


def compare_t1(report):
    print(f"{'cell':>22} {'n':>6} {'par':>5} {'mean':>10} {'pub':>10} {'mad':>9} {'pub':>9}")
    for (a, g), by_n in ref.TABLE1_ALPHA.items():
        for i, n in enumerate(ref.SIZES):
            for pname, table in (("alpha", ref.TABLE1_ALPHA), ("gamma", ref.TABLE1_GAMMA)):
                row = report.find(a, g, n, parameter=pname)
                pub_mean, pub_mad = table[(a, g)][i]
                print(f"{str((a, g)):>22} {n:>6} {pname:>5} {row.mean:10.4f} {pub_mean:10.3f}"
                      f" {row.mad:9.4f} {pub_mad:9.3f}")


def compare_t2(report):
    for (a, g) in ref.TABLE2_ALPHA:
        for i, n in enumerate(ref.SIZES):
            for pname, table in (("alpha", ref.TABLE2_ALPHA), ("gamma", ref.TABLE2_GAMMA)):
                row = report.find(a, g, n, parameter=pname)
                lo, hi = table[(a, g)][i]
                print(f"{str((a, g)):>22} {n:>6} {pname:>5} ({row.ci_lower_avg:.3f}, "
                      f"{row.ci_upper_avg:.3f})  published ({lo:.3f}, {hi:.3f})")


def compare_t3(report):
    for (a, g) in ref.TABLE3_ALPHA:
        for i, n in enumerate(ref.SIZES):
            ca = report.find(a, g, n, parameter="alpha").coverage
            cg = report.find(a, g, n, parameter="gamma").coverage
            print(f"{str((a, g)):>22} {n:>6} alpha {ca:.3f} ({ref.TABLE3_ALPHA[(a, g)][i]:.3f})"
                  f"  gamma {cg:.3f} ({ref.TABLE3_GAMMA[(a, g)][i]:.3f})")
    for i, n in enumerate(ref.SIZES):
        print(f"average n={n}: alpha {report.average('coverage', n):.3f} "
              f"({ref.TABLE3_AVERAGE_ALPHA[i]:.3f})  gamma "
              f"{report.average('coverage', n, parameter='gamma'):.3f} "
              f"({ref.TABLE3_AVERAGE_GAMMA[i]:.3f})")


def compare_t4(report):
    for (a, g), by_n in ref.TABLE4_ALPHA.items():
        for n in ref.SIZES:
            for pname, table in (("alpha", ref.TABLE4_ALPHA), ("gamma", ref.TABLE4_GAMMA)):
                means, cvs = table[(a, g)][n]
                cells = []
                for k, meth in enumerate(METHODS):
                    row = report.find(a, g, n, method=meth, parameter=pname)
                    cells.append(f"{meth} {row.mean:.3f}/{row.cv_percent:.2f}"
                                 f" ({means[k]:.3f}/{cvs[k]:.2f})")
                print(f"{str((a, g)):>12} {n:>6} {pname:>5}  " + "  ".join(cells))


COMPARE = {"T1": compare_t1, "T2": compare_t2, "T3": compare_t3, "T4": compare_t4}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tables", nargs="+", default=["1", "2", "3", "4"])
    ap.add_argument("--replicates", type=int, default=2000)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--outdir", default="reproduction")
    args = ap.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for k in args.tables:
        tid = f"T{k}"
        config = table_config(tid, replicates=args.replicates, master_seed=args.seed,
                              workers=args.workers)
        start = time.perf_counter()
        report = run_table(tid, config)
        (outdir / f"{tid}.csv").write_text(report.to_csv())
        print(f"== {tid} ({time.perf_counter() - start:.0f} s, m={args.replicates})")
        COMPARE[tid](report)


if __name__ == "__main__":
    main()
