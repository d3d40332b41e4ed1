# The declarative description of the data-embedding ansatz, and its compilation
# into a flat list of gate instructions
import json
from dataclasses import asdict, dataclass, fields, replace

from qcausal.exceptions import InputDataError

INIT_GATES = (None, 'H', 'S', 'T')
EMBEDDINGS = ('RY', 'RXRZ')
ENTANGLER_GATES = (None, 'CX', 'CZ', 'SqrtISwap')
TOPOLOGIES = ('ladder', 'circ', 'all_to_all')


@dataclass(frozen=True)
class CircuitSpec:
    """
    U(x)|0> = prod_depth [U_ent U_emb(scaling * x)] U_init |0>^n

    entangler_gate None gives an entangler-free (product state) circuit.
    """
    n_qubits: int = 1
    init: str = 'H'
    embedding: str = 'RY'
    entangler_gate: str = 'CX'
    entangler_topology: str = 'ladder'
    depth: int = 1
    scaling: float = 1.0

    def __post_init__(self):
        if not isinstance(self.n_qubits, int) or self.n_qubits < 1:
            raise InputDataError(f"n_qubits must be a positive integer, got {self.n_qubits}")
        if not isinstance(self.depth, int) or self.depth < 1:
            raise InputDataError(f"depth must be a positive integer, got {self.depth}")
        if not self.scaling > 0:
            raise InputDataError(f"scaling must be positive, got {self.scaling}")
        if self.init not in INIT_GATES:
            raise InputDataError(f"init must be one of {INIT_GATES}, got {self.init!r}")
        if self.embedding not in EMBEDDINGS:
            raise InputDataError(f"embedding must be one of {EMBEDDINGS}, got {self.embedding!r}")
        if self.entangler_gate not in ENTANGLER_GATES:
            raise InputDataError(f"entangler_gate must be one of {ENTANGLER_GATES}, got {self.entangler_gate!r}")
        if self.entangler_topology not in TOPOLOGIES:
            raise InputDataError(f"entangler_topology must be one of {TOPOLOGIES}, got {self.entangler_topology!r}")

    def with_qubits(self, n_qubits):
        return replace(self, n_qubits=n_qubits)

    def with_scaling(self, scaling):
        return replace(self, scaling=float(scaling))

    def entangler_pairs(self):
        """
        The (control, target) pairs of one entangler layer, in application order
        """
        n = self.n_qubits
        if self.entangler_gate is None or n < 2:
            return []
        if self.entangler_topology == 'all_to_all':
            return [(i, j) for i in range(n) for j in range(i + 1, n)]
        pairs = [(i, i + 1) for i in range(n - 1)]
        if self.entangler_topology == 'circ':
            pairs.append((n - 1, 0))
        return pairs

    def as_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.as_dict(), indent=4)

    @staticmethod
    def from_dict(obj):
        if not isinstance(obj, dict):
            raise InputDataError(f"a circuit spec must be a JSON object, got {type(obj).__name__}")
        known = {f.name for f in fields(CircuitSpec)}
        unknown = sorted(set(obj) - known)
        if unknown:
            raise InputDataError(f"unknown circuit spec fields: {unknown}")
        return CircuitSpec(**obj)

    @staticmethod
    def from_json(text):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputDataError(f"circuit spec is not valid JSON: {e}")
        return CircuitSpec.from_dict(obj)


class GateInstruction:
    """
    One compiled gate

    Properties:
        group: 'Init', 'Embedding' or 'Entangler', selects the instruction class
        name: the gate name, e.g., 'H', 'RY', 'CX'
        operand: the qubit index for one-qubit gates, the (control, target) pair otherwise
        feature: for embedding gates, the data column whose angle drives the rotation
    """

    def __init__(self, group, name, operand, feature=None):
        self.group = group
        self.name = name
        self.operand = operand
        self.feature = feature

    def __eq__(self, other):
        return (self.group == other.group and self.name == other.name
                and self.operand == other.operand and self.feature == other.feature)

    def __str__(self):
        if self.feature is not None:
            return f"{self.name}(x[{self.feature}]) q{self.operand}"
        return f"{self.name} {self.operand}"

    def __repr__(self):
        return f"GateInstruction({self})"


def compile_circuit(spec, n_features):
    """
    Flatten `spec` into gate instructions for data with `n_features` columns.
    Qubit q embeds feature q mod n_features.
    """
    if n_features < 1:
        raise InputDataError(f"at least one feature is needed, got {n_features}")
    instructions = []
    if spec.init is not None:
        for q in range(spec.n_qubits):
            instructions.append(GateInstruction('Init', spec.init, q))
    pairs = spec.entangler_pairs()
    for _ in range(spec.depth):
        for q in range(spec.n_qubits):
            instructions.append(GateInstruction('Embedding', spec.embedding, q, q % n_features))
        for pair in pairs:
            instructions.append(GateInstruction('Entangler', spec.entangler_gate, pair))
    return instructions
