import argparse
import sys

from gassmann.utils import configure_logging, get_settings
from gassmann.verify import CLAIMS, run_claim


def validate_claims(include_slow=False, budget=None):
    print("Running claim validation...")
    configure_logging(get_settings().log_level)
    failed = 0

    for claim in CLAIMS.values():
        primes = claim.primes + (claim.slow_primes if include_slow else ())
        for p in primes:
            report = run_claim(claim.id, p, budget)
            seconds = report.stats.get("seconds")
            if report.status == "verified":
                print(f"PASSED: {claim.id} at p={p} ({seconds}s)")
            elif report.status == "skipped":
                print(f"WARNING: {claim.id} at p={p} skipped ({report.stats.get('reason')})")
            else:
                failed += 1
                print(f"FAILED: {claim.id} at p={p}: {report.witness}")

    print("\nValidation Complete.")
    return failed


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--slow", action="store_true", help="include the long-running primes")
    parser.add_argument("--budget", type=float, default=None)
    args = parser.parse_args()

    sys.exit(1 if validate_claims(args.slow, args.budget) else 0)
