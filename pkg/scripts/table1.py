"""Print the projection table for n = 1..max_n and optionally save it as JSON."""

import argparse
import json
import time

from qlat.voronoi import table1


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=10)
    parser.add_argument("--json", metavar="PATH")
    args = parser.parse_args()
    t0 = time.perf_counter()
    rows = table1(args.max_n)
    elapsed = time.perf_counter() - t0
    print("n | vertices | h-gons | origin | rhomb angles")
    for r in rows:
        print(r.format())
    print(f"({elapsed:.2f} s)")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump([r.as_dict() for r in rows], fh, indent=1, ensure_ascii=False)
            fh.write("\n")


if __name__ == "__main__":
    main()
