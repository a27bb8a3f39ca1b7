#!/usr/bin/env python3
"""Re-run both worked examples and print their reports.

Usage: python scripts/reproduce_examples.py
"""
from qfuzzy.lab import reproduce_example
from qfuzzy.reports import render_text


def main():
    reports = [reproduce_example(example_id) for example_id in ("4.5", "4.10")]
    print(render_text(reports), end="")


if __name__ == "__main__":
    main()
