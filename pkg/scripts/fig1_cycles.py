"""Both cycles drawn in the (ell_g, E) plane over the pair (1, 2) energy curves.

Writes fig1_cycles.csv with one row per sampled point of each stroke; natural
units, g measured in multiples of g0.
"""

import math

from _common import parser, pyplot, write_csv

from gqw.engine import LengthRule, isoenergetic_path, run_isoenergetic_cycle, run_isogravitational_cycle
from gqw.engine import StrokeKind, energy
from gqw.spectrum import NATURAL, length_scale


def stroke_points(stroke, samples=60):
    g0, g1 = stroke.start.g, stroke.end.g
    if stroke.kind is StrokeKind.ISOGRAVITATIONAL:
        states = [stroke.start, stroke.end]
    elif stroke.kind is StrokeKind.ISOENERGETIC and stroke.length_rule is LengthRule.ENERGY_MATCHED:
        pair = (stroke.start.pure_level(), stroke.end.pure_level())
        states = isoenergetic_path(pair, g0, g1, stroke.start.mean_energy, samples)
    elif stroke.kind is StrokeKind.ISOENERGETIC:
        # the zero-ratio rule has no constant-energy path; draw the chord
        states = [stroke.start, stroke.end]
    else:
        states = []
        for i in range(samples):
            g = math.exp(math.log(g0) + (math.log(g1) - math.log(g0)) * i / (samples - 1))
            states.append(type(stroke.start).create(g, stroke.start.occupations))
    return [(s.ell, s.mean_energy) for s in states]


def main():
    args = parser(__doc__).parse_args()
    alpha = 1.6
    cycles = {
        "isogravitational": run_isogravitational_cycle(alpha=alpha),
        "isoenergetic_zero_ratio": run_isoenergetic_cycle(alpha=alpha),
        "isoenergetic_energy_matched": run_isoenergetic_cycle(alpha=alpha, length_rule=LengthRule.ENERGY_MATCHED),
    }
    rows = []
    for name, report in cycles.items():
        for i, stroke in enumerate(report.strokes, start=1):
            for ell, e in stroke_points(stroke):
                rows.append((name, i, stroke.kind.value, ell, e))
    write_csv(args.outdir / "fig1_cycles.csv", ["cycle", "stroke", "kind", "ell_g", "mean_energy"], rows)

    plt = pyplot()
    if plt is None or args.no_plot:
        return
    fig, ax = plt.subplots(figsize=(6, 4.5))
    gs = [10 ** (-1.5 + 2.5 * k / 300) for k in range(301)]
    for n in (1, 2):
        ax.plot([length_scale(NATURAL, g) for g in gs], [energy(n, g) for g in gs], color="0.7", lw=1)
    styles = {"isogravitational": "tab:red", "isoenergetic_zero_ratio": "tab:blue", "isoenergetic_energy_matched": "tab:green"}
    for name, color in styles.items():
        pts = [(r[3], r[4]) for r in rows if r[0] == name]
        ax.plot(*zip(*pts), color=color, label=name.replace("_", " "))
    ax.set_xlabel("ell_g (natural units)")
    ax.set_ylabel("<E> (natural units)")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(args.outdir / "fig1_cycles.png", dpi=150)


if __name__ == "__main__":
    main()
