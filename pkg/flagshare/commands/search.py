"""
search: find CNOT orders for a generator group.

A same-type group goes through the shared-flag order search; a mixed group is
searched as a mutual-flag part with the first generator as hub. The circuit
is written as text next to its certificate under ``<out>/search/``.
"""

import json
import logging
from pathlib import Path

from ..circuit import stabilizer_type
from ..codes import catalog
from ..errors import ConfigError, SearchExhausted
from ..ftcheck import algorithm2_search, search_mutual_part
from ..utils.decorators import EXIT_FAILURE, EXIT_OK, logged_command

# Initialize logger
logger = logging.getLogger(__name__)


def _write(folder: Path, base: str, circuit_text: str, record: dict) -> None:
    folder.mkdir(parents=True, exist_ok=True)
    (folder / f"{base}.txt").write_text(circuit_text, encoding="utf-8")
    with open(folder / f"{base}.json", "w", encoding="utf-8") as f:
        json.dump(record, f, indent=2)
    logger.info(f"Search result written to {folder / base}.txt")


@logged_command
def run(args) -> int:
    code = catalog(args.code)
    group = [name.strip() for name in args.group.split(",") if name.strip()]
    if len(group) < 2:
        raise ConfigError("--group needs at least two generator names")
    for name in group:
        code.index_of(name)
    config = args.config_obj
    seed = config.get("seed", args.seed)
    max_iters = config.get("max_iters", args.max_iters)
    print(f"seed {seed}")

    folder = Path(args.out) / "search"
    base = f"{args.code}_{'-'.join(group)}"
    kinds = {stabilizer_type(code.generator(name)) for name in group}
    try:
        if len(kinds) == 1:
            result = algorithm2_search(group, code, seed=seed, max_iters=max_iters)
            record = {
                "code": code.name, "group": group, "seed": seed, "iterations": result.iterations,
                "orders": {name: [q + 1 for q in order] for name, order in zip(group, result.orders)},
                "certificate": result.certificate.to_dict(),
            }
            circuit = result.circuit
        else:
            result = search_mutual_part(code, group[0], group[1:], seed=seed, max_iters=max_iters)
            record = {
                "code": code.name, "hub": group[0], "spokes": group[1:], "seed": seed,
                "iterations": result.iterations,
            }
            circuit = result.circuit
    except SearchExhausted as e:
        print(f"search exhausted after {e.iterations} candidates")
        for collision in (e.collisions or [])[:20]:
            print(f"  {collision}")
        if e.best is not None:
            _write(folder, f"{base}_best", e.best.to_text(), {"seed": seed, "collisions": e.collisions})
        return EXIT_FAILURE

    _write(folder, base, circuit.to_text(), record)
    print(f"{circuit.name}: found after {result.iterations} candidates, depth {circuit.depth}")
    return EXIT_OK
