"""Print Z(L(p,1), s) for every spin weight class of the chain diagrams.

    python3 demos/lens_table.py [--pmax 6] [--cocycles zn:2,zn:4,trivial:S3]
"""
import argparse

from spinsum.cli import cocycle_from_spec, format_value
from spinsum.lens import lens_diagram, spin_weight_classes
from spinsum.statesum import invariant_Z


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pmax", type=int, default=6)
    ap.add_argument("--cocycles", default="zn:2,zn:4,trivial:Z2,trivial:S3")
    args = ap.parse_args()
    cocycles = [cocycle_from_spec(s) for s in args.cocycles.split(",")]
    for p in range(1, args.pmax + 1):
        classes = spin_weight_classes(lens_diagram(p))
        print("L(%d,1): %d spin weight class(es)" % (p, len(classes)))
        for i, cl in enumerate(classes, 1):
            flags, d = cl[0]
            print("  class %d (%d curl patterns, e.g. %s)" % (i, len(cl), "".join(map(str, flags))))
            for c in cocycles:
                r = invariant_Z(d, c)
                print("    %-12s %-28s colorings %d" % (c.name if c.name != "trivial" else
                                                       "trivial:" + c.group.name,
                                                       format_value(r.value), r.coloring_count))


if __name__ == "__main__":
    main()
