"""Regenerate the bundled offline OEIS fixtures.

A000045 and A068911 are generated from their OEIS definitions (Fibonacci
numbers; n-step +-1 walks from 0 confined to [-2, 2]).  The remaining ids
could not be downloaded when the fixtures were built, so they hold only
the eight-term runs listed for them in the width table; run
``brick oeis fetch ID`` online to replace them with full cached copies.
"""
import json
from pathlib import Path

from brickwall.sequences import fibonacci, table1_reference

OUT = Path(__file__).resolve().parents[1] / "src" / "brickwall" / "data" / "oeis"


def bounded_walks(n_max, bound=2):
    counts = {0: 1}
    out = []
    for _ in range(n_max + 1):
        out.append(sum(counts.values()))
        nxt = {}
        for pos, c in counts.items():
            for q in (pos - 1, pos + 1):
                if -bound <= q <= bound:
                    nxt[q] = nxt.get(q, 0) + c
        counts = nxt
    return out


def write(seq_id, terms, note):
    doc = {"id": seq_id, "terms": [str(t) for t in terms], "fetched_at": None, "note": note}
    (OUT / f"{seq_id}.json").write_text(json.dumps(doc, indent=1) + "\n")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    write("A000045", [fibonacci(n) for n in range(41)], "generated: Fibonacci numbers F(0)..F(40)")
    write("A068911", bounded_walks(30), "generated: n-step +-1 walks from 0 staying within [-2, 2], n = 0..30")
    for row in table1_reference():
        if row.oeis_id in ("A000045", "A068911"):
            continue
        write(row.oeis_id, row.terms, "excerpt: eight-term run only, not downloaded; refresh with a live fetch")


if __name__ == "__main__":
    main()
