"""Compute golden values with the sympy oracles and write tests/golden/*.json."""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

import oracles  # noqa: E402

out = Path(__file__).resolve().parent.parent / "tests" / "golden"

sl2 = oracles.structure_from_matrices(oracles.sl_matrices(2))
gram = oracles.killing_gram(sl2)
(out / "sl2_killing.json").write_text(
    json.dumps({"basis": ["h", "e", "f"], "gram": [[str(gram[i, j]) for j in range(3)] for i in range(3)]}, indent=2) + "\n"
)

h3 = oracles.structure_from_matrices(oracles.heisenberg3_matrices())
golden = {
    "heisenberg1_der_dim": oracles.derivation_dim(h3),
    "sl2_der_dim": oracles.derivation_dim(sl2),
    "heisenberg1_lower_central_dims": oracles.lower_central_dims(h3),
}
(out / "derivations.json").write_text(json.dumps(golden, indent=2) + "\n")
print(gram, golden)
