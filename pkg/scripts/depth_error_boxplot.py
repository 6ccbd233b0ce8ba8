# %% Imports
import matplotlib.pyplot as plt
import seaborn as sns
from numpy import abs as np_abs
from pandas import DataFrame
from pandas import concat as pd_concat

from edge_fs.edge_distribution import edge_distribution
from edge_fs.edge_stereo import compute_disparity, disparity_to_depth
from edge_fs.frame_io import get_intrinsics_preset
from edge_fs.scene_sim import build_world, render_stereo

# %% Stereo depth error of a textured wall at increasing distance
intr = get_intrinsics_preset()
distances_m = [0.75, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0]

tables = []
for distance_m in distances_m:
    world, start = build_world("flat-wall", seed=0, distance_m=distance_m)
    frame, truth = render_stereo(world, start, intr)
    depth = disparity_to_depth(
        compute_disparity(edge_distribution(frame.left), edge_distribution(frame.right)),
        intr,
    )
    valid = depth.valid
    tables.append(
        DataFrame(
            {
                "distance_m": distance_m,
                "abs_error_m": np_abs(depth.depth_m[valid] - truth.depth_m[valid]),
            }
        )
    )
df = pd_concat(tables, ignore_index=True)
print(df.groupby("distance_m")["abs_error_m"].describe())

# %% Plot
sns.set_theme(style="whitegrid")
fig, ax = plt.subplots(figsize=(7, 4))
sns.boxplot(data=df, x="distance_m", y="abs_error_m", color="lightgray", ax=ax)
ax.set_xlabel("wall distance [m]")
ax.set_ylabel("|depth error| [m]")
fig.tight_layout()
