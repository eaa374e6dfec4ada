#!/usr/bin/env python3
"""Solve emitted saturation models with scipy's MILP and compare to sat-exact.

Usage: ilp_check.py SATMAT_BINARY
Exits 0 on agreement, 1 on a mismatch, 77 when scipy is unavailable.
"""
import random
import re
import subprocess
import sys
import tempfile

try:
    import numpy as np
    from scipy.optimize import Bounds, LinearConstraint, milp
except ImportError:
    print("scipy not available; skipping")
    sys.exit(77)

TERM = re.compile(r"([+-])?\s*(\d+)?\s*([A-Za-z_][A-Za-z0-9_]*)")
ROW = re.compile(r"([A-Za-z_][A-Za-z0-9_]*):(.*?)(<=|>=|=)\s*(-?\d+)\s*$")


def parse_lp(text):
    """Returns (objective terms, [(terms, sense, rhs)], binaries)."""
    section = None
    objective, rows, binaries = {}, [], []
    pending = ""
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("\\"):
            continue
        if line in ("Minimize", "Subject To", "Binaries", "End"):
            section = line
            continue
        if section == "Minimize":
            body = line.split(":", 1)[1] if ":" in line else line
            for sign, coef, var in TERM.findall(body):
                objective[var] = (-1 if sign == "-" else 1) * int(coef or 1)
        elif section == "Subject To":
            pending = f"{pending} {line}" if pending else line
            m = ROW.match(pending)
            if m:
                terms = {}
                for sign, coef, var in TERM.findall(m.group(2)):
                    terms[var] = terms.get(var, 0) + (-1 if sign == "-" else 1) * int(coef or 1)
                rows.append((terms, m.group(3), int(m.group(4))))
                pending = ""
        elif section == "Binaries":
            binaries.extend(line.split())
    if pending:
        raise ValueError(f"unterminated constraint: {pending}")
    return objective, rows, binaries


def solve(text):
    objective, rows, binaries = parse_lp(text)
    index = {v: i for i, v in enumerate(binaries)}
    c = np.zeros(len(binaries))
    for v, k in objective.items():
        c[index[v]] = k
    if not rows:
        return 0
    a = np.zeros((len(rows), len(binaries)))
    lo = np.full(len(rows), -np.inf)
    hi = np.full(len(rows), np.inf)
    for r, (terms, sense, rhs) in enumerate(rows):
        for v, k in terms.items():
            a[r, index[v]] = k
        if sense in ("<=", "="):
            hi[r] = rhs
        if sense in (">=", "="):
            lo[r] = rhs
    res = milp(c, constraints=LinearConstraint(a, lo, hi), integrality=np.ones(len(binaries)),
               bounds=Bounds(0, 1))
    if res.status != 0:
        raise RuntimeError(f"milp status {res.status}: {res.message}")
    return round(res.fun)


def run(binary, *args):
    out = subprocess.run([binary, *args], capture_output=True, text=True)
    if out.returncode not in (0, 1):
        raise RuntimeError(f"{' '.join(args)} exited {out.returncode}: {out.stderr}")
    return out.stdout


def model_value(binary, m, n, pattern):
    return solve(run(binary, "emit-ilp", "--rows", str(m), "--cols", str(n), "--pattern", pattern))


def main():
    binary = sys.argv[1]
    failures = 0
    for m, n, want in [(3, 3, 8), (3, 4, 10), (4, 4, 12), (4, 5, 14)]:
        got = model_value(binary, m, n, "corpus:tri")
        status = "ok" if got == want else "MISMATCH"
        failures += got != want
        print(f"triangular {m}x{n}: model {got}, expected {want} {status}")

    rng = random.Random(20240917)
    with tempfile.TemporaryDirectory() as tmp:
        for it in range(40):
            rows, cols = rng.randint(1, 3), rng.randint(1, 3)
            cells = [[rng.random() < 0.5 for _ in range(cols)] for _ in range(rows)]
            cells[rng.randrange(rows)][rng.randrange(cols)] = True
            path = f"{tmp}/p{it}.pat"
            with open(path, "w") as f:
                f.write("".join("".join("1" if b else "." for b in row) + "\n" for row in cells))
            m, n = rng.randint(1, 4), rng.randint(1, 4)
            got = model_value(binary, m, n, path)
            want = int(run(binary, "sat-exact", "--rows", str(m), "--cols", str(n), "--pattern", path).split()[0])
            if got != want:
                failures += 1
                print(f"MISMATCH {path} in {m}x{n}: model {got}, sat-exact {want}")
        print("random panel: 40 instances checked")

    print("all agree" if failures == 0 else f"{failures} mismatches")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
