"""
subop: construct and verify the wildcard subtyping relation of class declarations
"""
import sys

from app.cli.commands import main

if __name__ == "__main__":
    sys.exit(main())
