"""Recompute every published table and print one status line per id."""

import sys
import time

from ncv.report import REPRODUCIBLE, cmd_reproduce


def main():
    failed = 0
    for table_id in REPRODUCIBLE:
        t0 = time.perf_counter()
        report = cmd_reproduce(table_id)
        ok = report.payload["ok"]
        failed += not ok
        errata = len(report.payload.get("errata", []))
        extra = f"  (errata noted: {errata})" if errata else ""
        print(f"{table_id:10s} {'ok' if ok else 'MISMATCH':8s} {time.perf_counter() - t0:6.2f}s{extra}")
        for check in report.payload["checks"]:
            if not check["ok"]:
                print(f"    {check['check']}: expected {check['expected']}, got {check['computed']}")
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
