# %% Imports
from pathlib import Path

import matplotlib.pyplot as plt
import seaborn as sns

from edge_fs.frame_io import get_intrinsics_preset
from edge_fs.pipeline import run_sequence
from edge_fs.scene_sim import Motion, build_world, generate_sequence, scripted_trajectory
from edge_fs.velocity_estimator import velocity_metrics

# %% Render a sideways sway past a wall 1 m ahead
out_dir = Path("out/sway")
seed = 0
intr = get_intrinsics_preset()
world, start = build_world("flat-wall", seed=seed)
poses = scripted_trajectory(Motion("sway", 0.3), start, 12.0)
manifest = generate_sequence(world, poses, intr, seed, out_dir)

# %% Estimate
df = run_sequence(manifest)
print(velocity_metrics(df))

# %% Plot estimate against ground truth
sns.set_theme(style="whitegrid")
fig, axes = plt.subplots(2, 1, sharex=True, figsize=(8, 5))
for ax, comp in zip(axes, ("vx", "vy")):
    ax.plot(df["t"], df[f"{comp}_gt"], c="black", label="ground truth")
    ax.plot(df["t"], df[f"{comp}_est"], c="red", label="Edge-FS")
    ax.set_ylabel(f"{comp} [m/s]")
axes[0].legend()
axes[-1].set_xlabel("t [s]")
fig.tight_layout()
fig.savefig(out_dir / "velocity.png", dpi=150)
