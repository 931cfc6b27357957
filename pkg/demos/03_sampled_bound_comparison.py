"""
Bounds on sampled systems
=========================

Random non-invertible matrices over Z_25^3, and uniform ones over Z_7560^32,
sorted by exact height. The function independent bounds are constant across
a module; the function dependent bound tracks the true height.

Writes ``bounds_z25.png`` / ``bounds_z7560.png`` when matplotlib is
installed, otherwise prints the tables.
"""

from lfds_height.harness import PRESET_Z25, PRESET_Z7560, rows_to_csv, run_experiment

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

for name, cfg in [("z25", PRESET_Z25), ("z7560", PRESET_Z7560)]:
    rows = run_experiment(cfg)
    print(f"Z_{cfg.n}^{cfg.m}, {cfg.count} samples, seed {cfg.seed}, mode {cfg.mode}")
    if plt is None:
        print(rows_to_csv(rows))
        continue
    x = range(len(rows))
    fig, ax = plt.subplots(figsize=(7, 4))
    for key, label in [("height", "height"), ("thm_b", "thm B"), ("thm_a", "thm A"),
                       ("m_omega", "m Omega(n)"), ("xu_zou", "ceil(m log2 n)")]:
        ax.step(x, [getattr(r, key) for r in rows], where="mid", label=label)
    ax.set_xlabel("sample (sorted by height)")
    ax.set_ylabel("iterations")
    ax.set_yscale("log" if cfg.m > 8 else "linear")
    ax.legend()
    fig.tight_layout()
    fig.savefig(f"bounds_{name}.png", dpi=120)
    print(f"  wrote bounds_{name}.png")
