"""Efficiency of both cycles against the compression ratio alpha, for pairs (1, m)."""

from _common import parser, pyplot, write_csv

from gqw.engine import efficiency_sweep


def main():
    p = parser(__doc__)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--jobs", type=int, default=1)
    args = p.parse_args()
    alphas = [1.0 + 9.0 * i / (args.steps - 1) for i in range(args.steps)]
    curves = {m: efficiency_sweep(alphas, pair=(1, m), jobs=args.jobs) for m in (2, 3, 4)}
    rows = [(a, curves[2][i][1], *(curves[m][i][2] for m in (2, 3, 4))) for i, a in enumerate(alphas)]
    header = ["alpha", "eta_isograv", "eta_isoenergetic_1_2", "eta_isoenergetic_1_3", "eta_isoenergetic_1_4"]
    write_csv(args.outdir / "fig2_efficiency.csv", header, rows)

    plt = pyplot()
    if plt is None or args.no_plot:
        return
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.plot(alphas, [r[1] for r in rows], color="tab:red", label="isogravitational")
    for k, m in enumerate((2, 3, 4)):
        ax.plot(alphas, [r[2 + k] for r in rows], color="tab:blue", ls=("-", "--", ":")[k], label=f"isoenergetic (1, {m})")
    ax.set_xlabel("alpha")
    ax.set_ylabel("efficiency")
    ax.set_ylim(0, 1)
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.outdir / "fig2_efficiency.png", dpi=150)


if __name__ == "__main__":
    main()
