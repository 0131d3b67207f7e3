"""Re-certify the built-in examples and print a PASS/FAIL line per check."""

import sys

from herzog.cli import run

if __name__ == "__main__":
    sys.exit(run(["verify-examples", "--table", "--out", "/dev/null"] + sys.argv[1:]))
