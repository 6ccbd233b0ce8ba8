"""CLI entrypoints through ``click`` bindings."""
import json
import logging
from pathlib import Path

import click
from dotenv import load_dotenv
from pandas import concat

from edge_fs import __version__
from edge_fs._config import SUBCOMMANDS, RunConfig, load_config_file
from edge_fs._errors import DataError
from edge_fs.block_matcher import MatchConfig
from edge_fs.frame_io import INTRINSICS_PRESETS, load_manifest
from edge_fs.nav_sim import TURN_DIRECTIONS, NavConfig, run_episodes
from edge_fs.pipeline import EdgeFSPipeline, benchmark, run_sequence
from edge_fs.scene_sim import (
    FRAME_RATE_HZ,
    MANIFEST_NAME,
    MOTION_KINDS,
    WORLD_PRESETS,
    Motion,
    build_world,
    generate_sequence,
    render_stereo,
    scripted_trajectory,
)
from edge_fs.velocity_estimator import (
    FIT_METHODS,
    depth_error_table,
    depth_error_trend,
    read_estimates_csv,
    velocity_error,
    velocity_metrics,
    write_estimates_csv,
)

EXIT_IO = 3
EXIT_DATA = 4
WALL_PRESETS = ("flat-wall", "blank-wall")
SYNTHETIC_MOTION = Motion("lateral", 0.3)
SYNTHETIC_SECONDS = 1.0


class EdgeFSGroup(click.Group):
    """Maps library errors to exit codes: 3 for I/O failures, 4 for invalid data."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except DataError as err:
            logging.error("%s", err)
            ctx.exit(EXIT_DATA)
        except OSError as err:
            logging.error("%s", err)
            ctx.exit(EXIT_IO)


def _parse_motion(ctx, param, value):
    if isinstance(value, Motion):
        return value
    try:
        return Motion.parse(value)
    except DataError as err:
        raise click.BadParameter(str(err)) from err


def seed_option(f):
    return click.option(
        "--seed",
        type=int,
        default=0,
        show_default=True,
        envvar="EDGE_FS_SEED",
        help="Seed of every random choice; equal seeds give identical outputs.",
    )(f)


def preset_option(default: str):
    return click.option(
        "--preset",
        type=click.Choice(sorted(WORLD_PRESETS)),
        default=default,
        show_default=True,
        envvar="EDGE_FS_PRESET",
        help="World preset.",
    )


def out_option(default):
    return click.option(
        "--out",
        type=click.Path(file_okay=False),
        default=default,
        show_default=True,
        envvar="EDGE_FS_OUT",
        help="Output directory.",
    )


def intrinsics_options(f):
    f = click.option(
        "--baseline",
        type=click.FloatRange(min=0, min_open=True),
        default=None,
        help="Override the stereo baseline of the camera preset, m.",
    )(f)
    return click.option(
        "--intrinsics",
        type=click.Choice(sorted(INTRINSICS_PRESETS)),
        default="delfly-stereoboard",
        show_default=True,
        help="Camera preset (128x96 px, 57.4 x 44.5 deg FOV, 6 cm baseline).",
    )(f)


@click.group(cls=EdgeFSGroup, context_settings={"auto_envvar_prefix": "EDGE_FS"})
@click.option(
    "--log_level",
    type=click.Choice(["DEBUG", "INFO", "WARNING"]),
    default="INFO",
    help="Set logging level for both console and file",
)
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="JSON file of option values (underscored option names); flags and environment take precedence.",
)
@click.version_option(__version__)
@click.pass_context
def cli(ctx, log_level, config_path):
    """Edge-FS: velocity estimation from edge-distribution flow and stereo."""
    load_dotenv()
    logging.basicConfig(level=log_level)
    if config_path is not None:
        try:
            doc = load_config_file(config_path)
        except DataError as err:
            raise click.BadParameter(str(err), param_hint="--config") from err
        ctx.default_map = {name: dict(doc) for name in SUBCOMMANDS}


@cli.command()
@preset_option("flat-wall")
@click.option(
    "--motion",
    default="lateral:0.3",
    show_default=True,
    callback=_parse_motion,
    help=f"Scripted motion: one of {', '.join(MOTION_KINDS)}, with ':value' in m/s (rad/s for yaw).",
)
@click.option(
    "--seconds",
    type=click.FloatRange(min=0, min_open=True),
    default=3.0,
    show_default=True,
    help="Sequence length; frames are rendered at 30 Hz.",
)
@click.option(
    "--distance",
    type=click.FloatRange(min=0, min_open=True),
    default=1.0,
    show_default=True,
    help="Wall distance of the flat-wall presets, m.",
)
@seed_option
@out_option("out/gen")
@intrinsics_options
def gen(preset, motion, seconds, distance, seed, out, intrinsics, baseline):
    """Render a synthetic stereo dataset with ground truth."""
    run = RunConfig(
        "gen",
        seed=seed,
        out=Path(out),
        preset=preset,
        intrinsics_preset=intrinsics,
        baseline_m=baseline,
    )
    kwargs = {"distance_m": distance} if preset in WALL_PRESETS else {}
    world, start = build_world(run.preset, seed=run.seed, **kwargs)
    poses = scripted_trajectory(motion, start, seconds)
    manifest = generate_sequence(world, poses, run.intrinsics, run.seed, run.out)
    click.echo(f"Wrote {len(manifest)} frames to {run.out / MANIFEST_NAME}")


@cli.command()
@click.option(
    "--manifest",
    type=click.Path(dir_okay=False),
    default=None,
    help="Sequence manifest to process; without one, a lateral flight past --preset is rendered.",
)
@preset_option("flat-wall")
@seed_option
@click.option(
    "--window",
    type=click.IntRange(min=3),
    multiple=True,
    default=(11,),
    show_default=True,
    help="Odd SAD window size, px; repeat to compare several.",
)
@click.option(
    "--search-range",
    type=click.IntRange(min=1),
    default=15,
    show_default=True,
    help="Block-matching search range, px.",
)
@click.option(
    "--fit",
    type=click.Choice(FIT_METHODS),
    default="ols",
    show_default=True,
    help="Line fit of the scaled flow.",
)
@click.option(
    "--n-min",
    type=click.IntRange(min=2),
    default=20,
    show_default=True,
    help="Fewest columns for a valid velocity estimate.",
)
@out_option("out/estimate")
def estimate(manifest, preset, seed, window, search_range, fit, n_min, out):
    """Estimate velocity over a dataset; report metrics when it has ground truth."""
    run = RunConfig(
        "estimate",
        seed=seed,
        out=Path(out),
        preset=preset,
        manifest=None if manifest is None else Path(manifest),
        match=MatchConfig(search_range_px=search_range),
        windows=tuple(window),
    )
    if run.manifest is not None:
        sequence = load_manifest(run.manifest)
    else:
        logging.info("  Rendering %s (seed %s) to %s", run.preset, run.seed, run.out / "sequence")
        world, start = build_world(run.preset, seed=run.seed)
        poses = scripted_trajectory(SYNTHETIC_MOTION, start, SYNTHETIC_SECONDS)
        sequence = generate_sequence(
            world, poses, run.intrinsics, seed=run.seed, out_dir=run.out / "sequence", progress=False
        )
    run.out.mkdir(parents=True, exist_ok=True)

    metrics_tables, depth_tables = [], []
    for window_px in run.windows:
        cfg = run.match_for_window(window_px)
        logging.info("  Window %s px, search range %s px", window_px, cfg.search_range_px)
        pipeline = EdgeFSPipeline(
            sequence.intrinsics,
            flow_config=cfg,
            stereo_config=cfg,
            n_min=n_min,
            fit_method=fit,
        )
        df = run_sequence(sequence, pipeline)
        name = "estimates.csv" if len(run.windows) == 1 else f"estimates_w{window_px}.csv"
        write_estimates_csv(df, run.out / name)
        if not sequence.has_ground_truth:
            continue

        df_metrics = velocity_metrics(df).reset_index()
        df_metrics.insert(0, "window_px", window_px)
        metrics_tables.append(df_metrics)
        table = depth_error_table(df["mean_depth_m"], velocity_error(df))
        table.insert(0, "window_px", window_px)
        depth_tables.append(table)
        logging.info("  Depth/error rank correlation: %.3f", depth_error_trend(table))

    if not metrics_tables:
        logging.info("  No ground truth in manifest; metrics skipped")
        click.echo(f"Wrote estimates to {run.out}")
        return
    df_metrics = concat(metrics_tables, ignore_index=True)
    df_metrics.to_csv(run.out / "metrics.csv", index=False)
    concat(depth_tables, ignore_index=True).to_csv(run.out / "depth_errors.csv", index=False)
    click.echo(df_metrics.to_string(index=False))


@cli.command()
@preset_option("room4x4")
@click.option(
    "--episodes",
    type=click.IntRange(min=1),
    default=10,
    show_default=True,
    help="Number of seeded episodes.",
)
@click.option(
    "--max-seconds",
    type=click.FloatRange(min=0, min_open=True),
    default=90.0,
    show_default=True,
    help="Longest flight of an episode, s.",
)
@click.option(
    "--cruise",
    type=click.FloatRange(min=0),
    default=0.3,
    show_default=True,
    help="Forward speed when the way is clear, m/s.",
)
@click.option(
    "--turn-direction",
    type=click.Choice(TURN_DIRECTIONS),
    default="positive",
    show_default=True,
    help="Direction of the 60 deg avoidance turn.",
)
@click.option(
    "--turn-until-clear",
    is_flag=True,
    default=False,
    help="Keep turning until the way is clear instead of re-checking after each turn.",
)
@seed_option
@out_option("out/navsim")
@intrinsics_options
def navsim(
    preset,
    episodes,
    max_seconds,
    cruise,
    turn_direction,
    turn_until_clear,
    seed,
    out,
    intrinsics,
    baseline,
):
    """Fly seeded closed-loop avoidance episodes on Edge-FS outputs."""
    run = RunConfig(
        "navsim",
        seed=seed,
        out=Path(out),
        preset=preset,
        intrinsics_preset=intrinsics,
        baseline_m=baseline,
        nav=NavConfig(
            cruise_speed_m_s=cruise,
            turn_direction=turn_direction,
            turn_until_clear=turn_until_clear,
        ),
        repetitions=episodes,
    )
    df = run_episodes(
        run.preset,
        run.nav,
        run.seed,
        run.repetitions,
        max_seconds,
        out_dir=run.out,
        intrinsics=run.intrinsics,
    )
    run.out.mkdir(parents=True, exist_ok=True)
    df.to_csv(run.out / "summary.csv", index=False)
    aggregate = {
        "preset": run.preset,
        "episodes": len(df),
        "survived": int(df["survived"].sum()),
        "survival_rate": float(df["survived"].mean()),
        "mean_duration_s": float(df["duration_s"].mean()),
        "max_seconds": max_seconds,
    }
    (run.out / "summary.json").write_text(json.dumps(aggregate, indent=2))
    click.echo(
        f"{aggregate['survived']} of {aggregate['episodes']} episodes flew "
        f"{max_seconds:g} s without collision"
    )


@cli.command()
@click.option(
    "--frames",
    type=click.IntRange(min=1),
    default=300,
    show_default=True,
    help="Frames to time.",
)
@click.option(
    "--manifest",
    type=click.Path(dir_okay=False),
    default=None,
    help="Time a dataset instead of frames rendered in memory.",
)
@preset_option("flat-wall")
@seed_option
@out_option(None)
@intrinsics_options
def bench(frames, manifest, preset, seed, out, intrinsics, baseline):
    """Time Edge-FS against the dense 2-D block-matching oracle."""
    run = RunConfig(
        "bench",
        seed=seed,
        out=None if out is None else Path(out),
        preset=preset,
        manifest=None if manifest is None else Path(manifest),
        intrinsics_preset=intrinsics,
        baseline_m=baseline,
        repetitions=frames,
    )
    if run.manifest is not None:
        sequence = load_manifest(run.manifest)
        intr = sequence.intrinsics
        stereo_frames = [
            sequence.load_frame(i) for i in range(min(run.repetitions, len(sequence)))
        ]
    else:
        intr = run.intrinsics
        world, start = build_world(run.preset, seed=run.seed)
        poses = scripted_trajectory(
            Motion("lateral", 0.3), start, run.repetitions / FRAME_RATE_HZ
        )
        stereo_frames = [
            render_stereo(world, pose, intr, seed=run.seed, timestamp_s=i / FRAME_RATE_HZ)[0]
            for i, pose in enumerate(poses)
        ]

    df = benchmark(stereo_frames, intr, run.match)
    click.echo(df.to_string(float_format=lambda v: f"{v:.3f}"))
    click.echo(f"dense / edge_fs latency ratio: {df.attrs['ratio']:.1f}")
    if run.out is not None:
        run.out.mkdir(parents=True, exist_ok=True)
        df.assign(ratio=df.attrs["ratio"]).to_csv(run.out / "bench.csv")


@cli.command()
@click.option(
    "--csv",
    type=click.Path(dir_okay=False),
    required=True,
    help="Estimate CSV written by `estimate`.",
)
@out_option(None)
def metrics(csv, out):
    """Recompute MSE, VAR and NMXM from an estimate CSV."""
    run = RunConfig("metrics", out=None if out is None else Path(out))
    df_metrics = velocity_metrics(read_estimates_csv(csv))
    click.echo(df_metrics.to_string())
    if run.out is not None:
        run.out.mkdir(parents=True, exist_ok=True)
        df_metrics.to_csv(run.out / "metrics.csv")
