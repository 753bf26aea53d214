"""Regenerate the bundled lens space diagrams in src/spinsum/data/.

Each file gets expect_weight lines for its edges so that later edits of the
drawing that change a weight are caught by `validate`.

    python3 demos/make_bundled.py
"""
import os

from spinsum.diagram import format_morse, weights
from spinsum.lens import DATA, build_lens_diagram, lens_file


def main():
    os.makedirs(DATA, exist_ok=True)
    for p in range(1, 5):
        for s in ((1, 2) if p % 2 == 0 else (1,)):
            d = build_lens_diagram(p, s)
            d = d.replace(expectations=list(enumerate(weights(d))))
            head = "# L(%d,1), spin structure %d: chain of %d positive vertices\n" % (p, s, p)
            with open(lens_file(p, s), "w", encoding="utf-8") as f:
                f.write(head + format_morse(d))
            print("wrote", lens_file(p, s))


if __name__ == "__main__":
    main()
