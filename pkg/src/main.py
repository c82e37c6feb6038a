import logging
import sys
from typing import Optional, Sequence

import click
from pydantic import ValidationError

from src.commands import analyze, count, cover, fan, fixtures, validate
from src.core.config import settings
from src.core.errors import SphericalError

# Configure logging; stdout is reserved for reports
logging.basicConfig(level=settings.LOG_LEVEL, format=settings.LOG_FORMAT, stream=sys.stderr)
logger = logging.getLogger(__name__)


class SphericalGroup(click.Group):
    """Maps toolkit errors onto exit codes: parse 2, internal breach 3, other errors 1"""

    def invoke(self, ctx: click.Context):
        try:
            result = super().invoke(ctx)
        except SphericalError as exc:
            click.echo(str(exc), err=True)
            ctx.exit(exc.exit_code)
        except ValidationError as exc:
            click.echo(f"MalformedInput: {exc}", err=True)
            ctx.exit(2)
        if isinstance(result, int) and result:
            ctx.exit(result)
        return result


@click.group(cls=SphericalGroup)
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr")
def cli(verbose: bool) -> None:
    """Existence and counting of equivariant models of spherical homogeneous spaces"""
    if verbose:
        logging.getLogger().setLevel(logging.INFO)
    logger.info(f"✓ settings loaded ({settings.ENVIRONMENT})")


# Register commands
cli.add_command(validate.command)
cli.add_command(analyze.command)
cli.add_command(count.command)
cli.add_command(cover.command)
cli.add_command(fan.command)
cli.add_command(fixtures.command)


def run(args: Optional[Sequence[str]] = None) -> int:
    """Run the CLI without exiting the interpreter; returns the exit code"""
    try:
        result = cli.main(args=list(args) if args is not None else None, prog_name="spherical", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        return 1
    return result if isinstance(result, int) else 0
