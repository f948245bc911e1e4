"""The three closed-form scans, printed as plain text tables.

Everything here evaluates kernels only; no optimizer runs. The columns
carry the same formula tags the CLI reports use, so each number can be
traced back to one closed-form expression.

ex1:       identity channel, bounds vs dimension.
ex2:       erasure channel at d = 16, three certificates vs p.
tightness: erasure bound over its analytic upper bound, approaching 1.
"""

import math

from distcert import (
    binary_entropy,
    channel_distance_kernel,
    state_distance_kernel,
)


def show(title, columns, rows):
    print(f"--- {title}")
    widths = [max(len(c), 12) for c in columns]
    print("  ".join(c.rjust(w) for c, w in zip(columns, widths)))
    for row in rows:
        cells = [
            f"{v:.8f}" if isinstance(v, float) else str(v) for v in row
        ]
        print("  ".join(c.rjust(w) for c, w in zip(cells, widths)))
    print()


def main():
    rows = []
    for d in (2, 4, 8, 16, 32, 64):
        gap = math.log2(d)
        rows.append([d, channel_distance_kernel(gap, d), state_distance_kernel(gap, d)])
    show("identity channel vs dimension", ["d", "Eq9", "Eq10"], rows)
    print("Eq9 climbs toward 1 and Eq10 toward 2 as the dimension grows;")
    print("those are the exact distances, so the bounds become tight.")
    print()

    rows = []
    d, log_d = 16, 4.0
    for k in range(9):
        p = 0.2 + 0.05 * k
        gap_ic = (1 - 2 * p) * log_d
        gap_l = (1 - p) * log_d - binary_entropy(p)
        gap_er = (1 - p) * log_d
        rows.append(
            [
                p,
                state_distance_kernel(gap_ic, d),
                state_distance_kernel(gap_l, d),
                state_distance_kernel(gap_er, d),
                2 * (1 - p),
            ]
        )
    show(
        "erasure at d = 16, certificates vs p",
        ["p", "Eq10", "Eq11", "Eq12", "upper"],
        rows,
    )
    print("The upper column is the exact diamond distance 2(1-p); every")
    print("certificate stays below it. Past p = 1/2 the raw kernels go")
    print("negative, which is the table's way of saying: no certificate.")
    print()

    rows = []
    x = 0.25
    for k in range(1, 13):
        d = 2**k
        log_d = float(k)
        bound = channel_distance_kernel(2 * x * log_d, d)
        rows.append([d, bound, 2 * x, bound / (2 * x)])
    show(
        "tightness of the erasure bound at x = 0.25",
        ["d", "Eq9", "upper", "ratio"],
        rows,
    )
    print("The ratio increases with every doubling of d. The correction term")
    print("g(x) is fixed while the leading term grows like log d, so the")
    print("bound exhausts the analytic upper bound 2x in the limit.")


if __name__ == "__main__":
    main()
