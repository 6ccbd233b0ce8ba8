# %% Imports
from pathlib import Path

import matplotlib.pyplot as plt
from pandas import read_csv

from edge_fs.nav_sim import NavConfig, run_episodes
from edge_fs.scene_sim import build_world

# %% Fly ten episodes in the 4 x 4 m room
out_dir = Path("out/navsim")
preset = "room4x4"
df_summary = run_episodes(preset, NavConfig(), seed=0, episodes=10, max_time_s=90.0, out_dir=out_dir)
print(df_summary)

# %% Plot the flown paths over the floor plan
world, _ = build_world(preset)
fig, ax = plt.subplots(figsize=(6, 6))
for seg in world.segments:
    ax.plot([seg.x0_m, seg.x1_m], [seg.y0_m, seg.y1_m], c="black", lw=2)
for i, row in df_summary.iterrows():
    df_ticks = read_csv(out_dir / f"episode_{i:03d}.csv")
    ax.plot(
        df_ticks["x"],
        df_ticks["y"],
        lw=0.8,
        c="red" if row["collision"] else None,
        label=f"seed {row['seed']}",
    )
ax.set_aspect("equal")
ax.set_xlabel("x [m]")
ax.set_ylabel("y [m]")
ax.legend(fontsize="small")
fig.tight_layout()
