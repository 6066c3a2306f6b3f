"""Command-line interface.

Exit codes: 0 success, 1 usage/config error, 2 data error, 3 backend error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .analysis import CoverageCorpus, coverage_study
from .bundle import canonical_dumps, load_bundle, save_bundle
from .classify import distribution_report
from .config import load_config
from .errors import CkError, DataError, UsageError
from .ingest import load_corpus
from .pipeline import run_pipeline
from .render import wordstream_svg


@click.group()
def cli():
    """Process danmaku corpora into knowledge bundles and serve them."""


@cli.command("process")
@click.option("--config", "config_path", type=click.Path(), default=None, help="TOML pipeline configuration.")
@click.option("--danmaku", "danmaku_path", type=click.Path(), required=True, help="Danmaku XML export.")
@click.option("--transcript", "transcript_path", type=click.Path(), required=True, help="Transcript (.srt or lines JSON).")
@click.option("--meta", "meta_path", type=click.Path(), required=True, help="Video metadata JSON.")
@click.option("--out", "out_path", type=click.Path(), required=True, help="Bundle output path.")
def process(config_path, danmaku_path, transcript_path, meta_path, out_path):
    """Run the full pipeline on one video and write its bundle."""
    config = load_config(config_path)
    corpus = load_corpus(danmaku_path, transcript_path, meta_path)
    bundle = run_pipeline(corpus, config)
    data = save_bundle(bundle, out_path)
    knowledge = sum(1 for lbl in bundle.labels.values() if lbl.is_knowledge)
    click.echo(
        f"wrote {out_path} ({len(data)} bytes): {len(bundle.comments)} comments, "
        f"{knowledge} knowledge, {len(bundle.clusters)} clusters, "
        f"{len(bundle.sections)} sections, {len(bundle.windows)} windows"
    )
    for warning in bundle.provenance.get("warnings", []):
        click.echo(f"warning: {warning}", err=True)


@cli.command("serve")
@click.option("--dir", "bundle_dir", type=click.Path(), required=True, help="Directory of bundle JSON files.")
@click.option("--addr", default="127.0.0.1:8787", show_default=True, help="host:port to bind.")
@click.option("--config", "config_path", type=click.Path(), default=None, help="Config (for remote explain backend).")
@click.option("--static", "static_dir", type=click.Path(), default=None, help="Directory of viewer assets to serve at /.")
def serve_cmd(bundle_dir, addr, config_path, static_dir):
    """Serve bundles over the read-only JSON API."""
    from .server import serve

    host, _, port_s = addr.rpartition(":")
    if not host or not port_s.isdigit():
        raise UsageError(f"--addr must be host:port, got {addr!r}")
    config = load_config(config_path) if config_path else None
    serve(bundle_dir, host, int(port_s), config, static_dir)


@cli.group("report")
def report():
    """Human-readable and JSON reports."""


@report.command("distribution")
@click.argument("bundle_path", type=click.Path())
@click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of a table.")
def report_distribution(bundle_path, as_json):
    """Per-category share of knowledge comments in a bundle."""
    bundle = load_bundle(bundle_path)
    rep = distribution_report(list(bundle.labels.values()))
    if as_json:
        click.echo(
            canonical_dumps(
                {
                    "total_knowledge": rep.total_knowledge,
                    "rows": [{"category": slug, "count": n, "percent": pct} for slug, n, pct in rep.rows],
                    "note": rep.note,
                }
            )
        )
    else:
        click.echo(rep.format_text())


@report.command("coverage")
@click.option("--study", "study_path", type=click.Path(), required=True, help="Study JSON (entities + corpora per video).")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of a table.")
def report_coverage(study_path, as_json):
    """Entity coverage of danmaku vs. traditional comments, with the
    signed-rank comparison."""
    try:
        payload = json.loads(Path(study_path).read_text("utf-8"))
        corpora = [
            CoverageCorpus(
                str(c["video_id"]),
                tuple(c["entities"]),
                tuple(c["danmaku"]),
                tuple(c["comments"]),
                {k: tuple(v) for k, v in c.get("aliases", {}).items()},
            )
            for c in payload["corpora"]
        ]
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise DataError(f"cannot read study file {study_path}: {exc}")
    study = coverage_study(corpora)
    click.echo(canonical_dumps(study.to_dict()) if as_json else study.format_text())


@cli.group("render")
def render():
    """Static renderings of bundle artifacts."""


@render.command("wordstream")
@click.argument("bundle_path", type=click.Path())
@click.option("--out", "out_path", type=click.Path(), required=True, help="SVG output path.")
def render_wordstream(bundle_path, out_path):
    """Render the bundle's default Wordstream layout to SVG."""
    bundle = load_bundle(bundle_path)
    svg = wordstream_svg(bundle.layout, title=bundle.meta.title)
    Path(out_path).write_text(svg, "utf-8")
    click.echo(f"wrote {out_path}")


def main():
    try:
        cli(standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        sys.exit(1)
    except click.ClickException as exc:
        exc.show()
        sys.exit(1)
    except click.exceptions.Abort:
        sys.exit(1)
    except CkError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(exc.exit_code)
    sys.exit(0)


if __name__ == "__main__":
    main()
