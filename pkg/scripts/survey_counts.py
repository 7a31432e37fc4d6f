#!/usr/bin/env python3
"""Print the classification count tables.

For each dimension: the number of excess-1 lattices, the number of reducible
excess-2 lattices, and — where defined — the neighbourly count under both
closed forms (the derivation's and the printed one), flagging where they
disagree with the enumeration.
"""

from __future__ import annotations

import argparse

import cellman as cm


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-dim", type=int, default=10, help="largest dimension")
    args = ap.parse_args()

    print(f"{'d':>3} {'excess-1':>9} {'excess-2 red.':>14} "
          f"{'nbly (enum)':>12} {'nbly (derived)':>15} {'nbly (printed)':>15}")
    for d in range(1, args.max_dim + 1):
        e1 = cm.count_excess1(d) if d >= 1 else ""
        e2 = cm.count_reducible_excess2(d) if d >= 2 else ""
        row = f"{d:>3} {e1:>9} {str(e2):>14}"
        if d >= 5:
            enum = len(cm.enumerate_reducible_excess2(d, neighbourly=True))
            derived = cm.count_neighbourly_reducible_excess2(d)
            printed = cm.count_neighbourly_reducible_excess2_printed(d)
            flag = "" if enum == derived == printed else "   <- forms disagree"
            row += f" {enum:>12} {derived:>15} {printed:>15}{flag}"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
