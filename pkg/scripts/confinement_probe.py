"""Check disjoint-bump confining sets for germ stabilisers of several point sets,
and contrast with a cyclic subgroup that its own generator fails to confine.

    python3 scripts/confinement_probe.py --radius 5
"""
from __future__ import annotations

import argparse

from thompson.cayley import cayley_ball
from thompson.constructions import build_confining_set, pigeonhole_check, verify_confining
from thompson.dyadic import format_number, parse_set
from thompson.element import X0
from thompson.schreier import make_oracle

SETS = ["1/2", "1/3", "1/2,3/4", "1/8,5/8,7/8"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--radius", type=int, default=4)
    ap.add_argument("--sets", nargs="*", default=SETS)
    args = ap.parse_args()

    ball = cayley_ball(args.radius)
    for text in args.sets:
        S = parse_set(text)
        P = build_confining_set(S).elements
        H = make_oracle("germ_stab_commutator", S)
        rep = verify_confining(H, P, args.radius, ball)
        ph = pigeonhole_check(S, P, args.radius, ball)
        shown = ",".join(map(format_number, S))
        print(f"S={{{shown}}}: |P|={len(P)} conjugators={rep.conjugators_checked} "
              f"confining={'pass' if rep.passed else 'FAIL ' + str(rep.witness_word)} "
              f"pigeonhole={'pass' if ph.passed else 'FAIL'}")
    rep = verify_confining(make_oracle("cyclic", X0), [X0], args.radius, ball)
    print(f"<x0> with P={{x0}}: {'pass' if rep.passed else 'fails at k = ' + str(rep.witness_word)}")


if __name__ == "__main__":
    main()
