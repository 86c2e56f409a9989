"""Utility script to initialize the results database, optionally warming the prime cache."""
import argparse

from config import settings, setup_logging
from database import init_db
from result_store import ResultStore


def main() -> None:
    parser = argparse.ArgumentParser(description="Create the result tables.")
    parser.add_argument("--warm", type=int, nargs="*", default=[], metavar="M",
                        help="cache p0(m) for these m")
    args = parser.parse_args()

    setup_logging()
    init_db()
    store = ResultStore()
    for m in args.warm:
        prime = store.cached_find_p0(m)
        print(f"p0({m}) = {prime.a}*2^{m}+1")
    print(f"Database initialized at {settings.database_url}.")


if __name__ == "__main__":
    main()
