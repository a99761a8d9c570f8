#!/usr/bin/env python3
"""Regenerate tests/golden/*.txt with sympy.

Each file holds the resultant in x of
    F1 = P^k(x) - x,   F2 = d/dx P^k(x) - lambda,   P(x) = a0 + a1 x + ... + aD x^D
in canonical text: terms in graded-lex descending order over (a0..aD, lambda).
The lambda0 = 1 slice goes next to it.
"""
import pathlib
import sys

import sympy as sp


def canonical(poly_expr, gens):
    poly = sp.Poly(sp.expand(poly_expr), *gens)
    if poly.is_zero:
        return "0"
    parts = []
    for monom, coeff in poly.terms(order="grlex"):
        coeff = int(coeff)
        factors = [g.name if e == 1 else f"{g.name}^{e}" for g, e in zip(gens, monom) if e]
        mag = abs(coeff)
        body = "*".join(factors) if factors else str(mag)
        if factors and mag != 1:
            body = f"{mag}*{body}"
        if not parts:
            parts.append(("-" if coeff < 0 else "") + body)
        else:
            parts.append((" - " if coeff < 0 else " + ") + body)
    return "".join(parts)


def resultant(degree, period):
    a = sp.symbols(" ".join(f"a{i}" for i in range(degree + 1)))
    a = a if isinstance(a, tuple) else (a,)
    x, lam = sp.symbols("x lambda")
    p = sum(a[i] * x**i for i in range(degree + 1))
    q = x
    for _ in range(period):
        q = sp.expand(p.subs(x, q))
    r = sp.resultant(q - x, sp.diff(q, x) - lam, x)
    return sp.expand(r), list(a) + [lam], list(a), lam


def main(out_dir):
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for degree, period in [(1, 1), (2, 1), (1, 2), (2, 2)]:
        r, gens, agens, lam = resultant(degree, period)
        (out / f"resultant_D{degree}_k{period}.txt").write_text(canonical(r, gens) + "\n")
        (out / f"slice1_D{degree}_k{period}.txt").write_text(canonical(r.subs(lam, 1), agens) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "tests" / "golden")
