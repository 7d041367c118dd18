#!/usr/bin/env python3
"""Full-scale reproductions. None of these run in CI and nothing is asserted.

    scripts/reproduce.py table  [--dmin 7] [--dmax 12]   table rows via slice tables
    scripts/reproduce.py diag12 [--terms 1600]            d = 12 diagonal via slices
    scripts/reproduce.py ratio  [--n 500000]              d = 12 ratio with K = 0 and K = 10
    scripts/reproduce.py fixedn [--dmax 200]              w_2(d) against e (2d)! / 2^d

Every step shells out to the rookwalk binary (ROOKWALK env var, default
build/tools/rookwalk) and leaves its files in --work.
"""

import argparse
import os
import subprocess
import sys
import time

HERE = os.path.dirname(os.path.abspath(__file__))
BINARY = os.environ.get("ROOKWALK", os.path.join(HERE, "..", "build", "tools", "rookwalk"))

# Rough single-core timings; the last rows take days.
WARNINGS = {
    "table": "d = 7 takes minutes, d = 8..12 take hours to days and tens of GB (200x200 slice tables)",
    "diag12": "the 200x200 slice table for d = 12 and the bivariate fit take many hours",
    "ratio": "n = 500000 at d = 12 means terms with millions of digits; expect days and a lot of memory",
    "fixedn": "cheap below d = 100, minutes beyond",
}


# Terms computed directly for d <= 7 (the same budgets as repro-table).
DIRECT_TERMS = {1: 30, 2: 40, 3: 50, 4: 90, 5: 150, 6: 260, 7: 480}


def rw(*args, out=None):
    cmd = [BINARY, *map(str, args)]
    if out:
        cmd += ["--out", out]
    t0 = time.time()
    res = subprocess.run(cmd, capture_output=True, text=True)
    print(f"# {' '.join(cmd[1:])}  ({time.time() - t0:.1f} s)", file=sys.stderr)
    if res.returncode != 0:
        sys.exit(res.stderr.strip())
    return res.stdout


def diagonal_via_slices(work, d, terms, side, degree):
    tsv = os.path.join(work, f"slice{d}.tsv")
    rec2 = os.path.join(work, f"slice{d}.rec")
    bfile = os.path.join(work, f"d{d}.b")
    if not os.path.exists(tsv):
        rw("slice", "--dim", d, "--nmax", side, "--mmax", side, out=tsv)
    if not os.path.exists(rec2):
        sys.stdout.write(rw("guess2d", "--input", tsv, "--max-order", 16, "--max-degree", degree, out=rec2))
    if not os.path.exists(bfile):
        rw("extend", "--rec", rec2, "--input", tsv, "--to", terms - 1, out=bfile)
    return bfile


def cmd_table(a):
    print("dim\torder\tdegree\tmaxint")
    for d in range(a.dmin, a.dmax + 1):
        if d in DIRECT_TERMS:
            bfile = os.path.join(a.work, f"d{d}.b")
            rw("terms", "--dim", d, "--count", DIRECT_TERMS[d], out=bfile)
        else:
            bfile = diagonal_via_slices(a.work, d, a.terms, a.side, a.degree)
        rec = os.path.join(a.work, f"d{d}.rec")
        count = DIRECT_TERMS.get(d, a.terms)
        rw("guess", "--input", bfile, "--max-order", d + 1, "--max-degree", count // (d + 1), "--margin", 20, out=rec)
        s = rw("stats", "--rec", rec).split()
        print(f"{d}\t{s[1]}\t{s[3]}\t{s[5]} dd", flush=True)


def cmd_diag12(a):
    print(diagonal_via_slices(a.work, 12, a.terms, a.side, a.degree))


def cmd_ratio(a):
    bfile = diagonal_via_slices(a.work, 12, a.terms, a.side, a.degree)
    rec = os.path.join(a.work, "d12.rec")
    if not os.path.exists(rec):
        rw("guess", "--input", bfile, "--max-order", 13, "--max-degree", a.terms // 13, "--margin", 20, out=rec)
    big = os.path.join(a.work, f"d12_{a.n}.b")
    if not os.path.exists(big):
        rw("extend", "--rec", rec, "--input", bfile, "--to", a.n, out=big)
    for k in (1, 10):
        sys.stdout.write(rw("asym", "--rec", rec, "--order", k, "--input", big, "--dim", 12, "--n", a.n,
                            "--precision", 512))


def cmd_fixedn(a):
    out = rw("fixedn", "--n", 2, "--dmax", a.dmax, "--workers", a.workers)
    print(out, end="")


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("what", choices=sorted(WARNINGS))
    p.add_argument("--work", default=os.path.join(HERE, "..", "build", "repro"))
    p.add_argument("--dmin", type=int, default=7)
    p.add_argument("--dmax", type=int, default=12)
    p.add_argument("--terms", type=int, default=1600)
    p.add_argument("--side", type=int, default=200)
    p.add_argument("--degree", type=int, default=40)
    p.add_argument("--n", type=int, default=500000)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    a = p.parse_args()
    if a.what == "fixedn":
        a.dmax = max(a.dmax, 40)
    print(f"warning: {WARNINGS[a.what]}", file=sys.stderr)
    os.makedirs(a.work, exist_ok=True)
    {"table": cmd_table, "diag12": cmd_diag12, "ratio": cmd_ratio, "fixedn": cmd_fixedn}[a.what](a)


if __name__ == "__main__":
    main()
