"""codes: list catalog codes with their generators and logical operators."""

import logging

from ..codes import CATALOG_NAMES, CssCode, catalog, load_code
from ..utils.decorators import EXIT_OK, logged_command

# Initialize logger
logger = logging.getLogger(__name__)


def describe(code: CssCode) -> str:
    lines = [f"{code.name}: [[{code.n},{code.k},{code.d}]]"]
    for name, g in zip(code.generator_names, code.generators):
        lines.append(f"  {name:>4}  {g.label()}")
    for j, (lx, lz) in enumerate(zip(code.logical_x, code.logical_z), start=1):
        lines.append(f"  X_L{j}  {lx.label()}")
        lines.append(f"  Z_L{j}  {lz.label()}")
    return "\n".join(lines)


@logged_command
def run(args) -> int:
    codes = [load_code(args.file)] if args.file else [catalog(name) for name in CATALOG_NAMES]
    print("\n\n".join(describe(code) for code in codes))
    return EXIT_OK
