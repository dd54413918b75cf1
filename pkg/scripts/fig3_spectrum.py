"""First five neutron eigenenergies against gravity, with g0 = 10 m/s^2."""

from _common import parser, pyplot, write_csv

from gqw.spectrum import ELECTRON_VOLT, GqwParams, eigenenergy


def main():
    p = parser(__doc__)
    p.add_argument("--levels", type=int, default=5)
    args = p.parse_args()
    params = GqwParams.si(g0=10.0)
    gs = [0.1 + 29.9 * i / 299 for i in range(300)]
    rows = [(g, *(eigenenergy(params, n, g) / ELECTRON_VOLT * 1e12 for n in range(1, args.levels + 1))) for g in gs]
    header = ["g[m/s2]", *(f"E_{n}[peV]" for n in range(1, args.levels + 1))]
    write_csv(args.outdir / "fig3_spectrum.csv", header, rows)

    plt = pyplot()
    if plt is None or args.no_plot:
        return
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for n in range(1, args.levels + 1):
        ax.plot(gs, [r[n] for r in rows], label=f"n = {n}")
    ax.axvline(params.g0, color="0.6", lw=0.8, ls="--")
    ax.set_xlabel("g (m/s^2)")
    ax.set_ylabel("E_n (peV)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.outdir / "fig3_spectrum.png", dpi=150)


if __name__ == "__main__":
    main()
