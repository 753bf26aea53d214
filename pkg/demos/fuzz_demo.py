"""Random move sequences on the bundled diagrams.

Runs the invariance fuzz with the correct crossing sign convention and then
with a deliberately wrong one, which the fuzz has to catch.

    python3 demos/fuzz_demo.py [--steps 200] [--seeds 3]
"""
import argparse
import time

from spinsum.algebra import zn_example_cocycle
from spinsum.lens import lens_diagram
from spinsum.moves import fuzz_invariance

DIAGRAMS = [(1, 1), (2, 1), (2, 2), (3, 1), (4, 1), (4, 2)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=200)
    ap.add_argument("--seeds", type=int, default=3)
    args = ap.parse_args()
    for n in (2, 4):
        c = zn_example_cocycle(n)
        for p, s in DIAGRAMS:
            for seed in range(args.seeds):
                t = time.perf_counter()
                rep = fuzz_invariance(lens_diagram(p, s), c, steps=args.steps, seed=seed)
                counts = " ".join("%s:%d" % kv for kv in sorted(rep.counts().items()))
                print("zn:%d L(%d,1) s%d seed %d: %s in %.2fs  [%s]" % (
                    n, p, s, seed, rep.status, time.perf_counter() - t, counts))
    print()
    print("wrong crossing sign convention:")
    for p, s in DIAGRAMS:
        rep = fuzz_invariance(lens_diagram(p, s), zn_example_cocycle(4), steps=args.steps, seed=0,
                              pairing="corrupt")
        where = "" if rep.ok else " at %(move)s: %(reason)s" % rep.failure
        print("  L(%d,1) s%d: %s%s" % (p, s, rep.status, where))


if __name__ == "__main__":
    main()
