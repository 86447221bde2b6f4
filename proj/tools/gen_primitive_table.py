#!/usr/bin/env python3
"""Regenerates include/mwclab/primitive_polynomials.inc.

Enumerates every degree-n polynomial over GF(2) with nonzero constant term and
keeps those whose Fibonacci LFSR cycles through all 2^n - 1 nonzero states.
"""
import sys


def period(mask, n):
    state = start = (1 << n) - 1
    steps = 0
    while True:
        fb = bin(state & mask & ((1 << n) - 1)).count("1") & 1
        state = (state >> 1) | (fb << (n - 1))
        steps += 1
        if state == start or steps > (1 << n):
            return steps


def main(lo=3, hi=13):
    out = ["// Generated by tools/gen_primitive_table.py. Do not edit.",
           "// Bit i of each entry is the coefficient of x^i."]
    for n in range(lo, hi + 1):
        full = (1 << n) - 1
        polys = [(1 << n) | low for low in range(1, 1 << n, 2)
                 if period((1 << n) | low, n) == full]
        out.append(f"inline constexpr std::uint32_t kPrimitiveDegree{n}[] = {{")
        for i in range(0, len(polys), 8):
            out.append("    " + ", ".join(f"0x{p:04X}" for p in polys[i:i + 8]) + ",")
        out.append("};")
    sys.stdout.write("\n".join(out) + "\n")


if __name__ == "__main__":
    main()
