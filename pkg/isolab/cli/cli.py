# isolab/cli/cli.py

from typer import Typer

from isolab.cli.analyze_cli import analyze
from isolab.cli.polygon_cli import polygon
from isolab.cli.robba_cli import app as robba_cli_app
from isolab.cli.scan_cli import scan
from isolab.cli.seminorm_cli import app as seminorm_cli_app
from isolab.cli.verify_cli import verify
from isolab.utils.paths import ensure_directories, print_project_paths

cli = Typer(help="isolab: p-adic Hodge theory laboratory", no_args_is_help=True)

cli.command("analyze")(analyze)
cli.command("scan")(scan)
cli.command("verify")(verify)
cli.command("polygon")(polygon)

# Namespaced command groups
cli.add_typer(seminorm_cli_app, name="seminorm", help="Seminorm evaluation commands.")
cli.add_typer(robba_cli_app, name="robba", help="Robba-ring commands.")


@cli.command("paths")
def paths(create: bool = False):
    """Print the resolved workspace directories (and create them with --create)."""
    if create:
        ensure_directories()
    print_project_paths()


if __name__ == "__main__":
    cli()
