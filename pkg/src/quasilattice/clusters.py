"""G-clusters as signed-permutation data plus exact Gram matrices.

A cluster is the symmetric orbit set {e_1..e_k, -e_1..-e_k} of a finite
group acting on physical space.  All exact computation downstream only
ever touches the Gram matrix <e_i, e_j> (always inside Q(sqrt5) for the
catalog); cartesian coordinates are floating and used for rendering and
cross-checks only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from gmpy2 import mpq

from .goldfield import GoldenScalar, TAU, ONE, ZERO, format_golden, parse_golden
from .linalg import GoldenMatrix, rank, vec, vec_dot

GROUP_CLOSURE_BOUND = 10_000


class SignedPermutation:
    """Signed permutation e_j -> signs[j] * e_{images[j]} (0-based)."""

    __slots__ = ("images", "signs")

    def __init__(self, images, signs):
        images = tuple(int(i) for i in images)
        signs = tuple(int(s) for s in signs)
        if sorted(images) != list(range(len(images))):
            raise ValueError("images are not a permutation")
        if len(signs) != len(images) or any(s not in (-1, 1) for s in signs):
            raise ValueError("signs must be +-1, one per index")
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "signs", signs)

    def __setattr__(self, name, value):
        raise AttributeError("SignedPermutation is immutable")

    @property
    def size(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, size: int) -> "SignedPermutation":
        return cls(range(size), [1] * size)

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        """self after other: (self * other)(e_j) = self(other(e_j))."""
        images = tuple(self.images[other.images[j]] for j in range(self.size))
        signs = tuple(other.signs[j] * self.signs[other.images[j]]
                      for j in range(self.size))
        return SignedPermutation(images, signs)

    def inverse(self) -> "SignedPermutation":
        images = [0] * self.size
        signs = [1] * self.size
        for j, (i, s) in enumerate(zip(self.images, self.signs)):
            images[i] = j
            signs[i] = s
        return SignedPermutation(images, signs)

    def is_identity(self) -> bool:
        return all(i == j for j, i in enumerate(self.images)) and all(
            s == 1 for s in self.signs
        )

    def apply_to_vector(self, x):
        """Superspace action on coordinates (Theorem-1 lift)."""
        y = [None] * self.size
        for j in range(self.size):
            y[self.images[j]] = self.signs[j] * x[j]
        return tuple(y)

    def matrix(self) -> GoldenMatrix:
        rows = [[ZERO] * self.size for _ in range(self.size)]
        for j in range(self.size):
            rows[self.images[j]][j] = GoldenScalar(self.signs[j])
        return GoldenMatrix(rows)

    def __eq__(self, other):
        if not isinstance(other, SignedPermutation):
            return NotImplemented
        return self.images == other.images and self.signs == other.signs

    def __hash__(self):
        return hash((self.images, self.signs))

    def __repr__(self):
        body = ", ".join(
            f"{j+1}->{'-' if s < 0 else ''}{i+1}"
            for j, (i, s) in enumerate(zip(self.images, self.signs))
        )
        return f"SignedPermutation({body})"


@dataclass(frozen=True)
class GroupClosure:
    elements: tuple
    order: int


def close_group(generators, bound: int = GROUP_CLOSURE_BOUND) -> GroupClosure:
    """Full closure of the generated group by breadth-first composition."""
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    size = gens[0].size
    if any(g.size != size for g in gens):
        raise ValueError("generators act on different sizes")
    seen = {SignedPermutation.identity(size)}
    frontier = list(seen)
    while frontier:
        new = []
        for h in frontier:
            for g in gens:
                e = g.compose(h)
                if e not in seen:
                    seen.add(e)
                    new.append(e)
                    if len(seen) > bound:
                        raise ValueError(
                            f"group closure exceeds bound {bound}; "
                            "generator set does not close"
                        )
        frontier = new
    elements = tuple(sorted(seen, key=lambda p: (p.images, p.signs)))
    return GroupClosure(elements=elements, order=len(elements))


@dataclass(frozen=True)
class ClusterSpec:
    """A symmetric G-cluster with exact Gram data.

    ``generators`` maps generator names to signed permutations of the k
    cluster representatives; ``relations`` are presentation words that must
    compose to the identity.  ``embedding`` rows are floating cartesian
    coordinates of the e_i, for rendering and float cross-checks only.
    """

    name: str
    k: int
    n: int
    gram: GoldenMatrix
    generators: dict
    relations: tuple = ()
    embedding: tuple = None  # k rows of n floats
    exact_coords: tuple = None  # optional k rows of n GoldenScalars

    def generator_list(self):
        return [self.generators[name] for name in sorted(self.generators)]

    def rho_squared(self) -> GoldenScalar:
        return GoldenScalar(self.n) / self.gram.trace()

    def edge_norm_squared(self) -> GoldenScalar:
        """|e_1|^2, the squared physical edge unit."""
        return self.gram[0, 0]

    def to_json_dict(self) -> dict:
        d = {
            "name": self.name,
            "k": self.k,
            "n": self.n,
            "gram": [[format_golden(e) for e in row] for row in self.gram.data],
            "generators": {
                name: {
                    "perm": [i + 1 for i in p.images],
                    "signs": list(p.signs),
                }
                for name, p in sorted(self.generators.items())
            },
            "relations": list(self.relations),
        }
        if self.embedding is not None:
            d["embedding"] = [[float(x) for x in row] for row in self.embedding]
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "ClusterSpec":
        gram = GoldenMatrix(
            [[parse_golden(e) for e in row] for row in d["gram"]]
        )
        gens = {
            name: SignedPermutation(
                [i - 1 for i in g["perm"]], g["signs"]
            )
            for name, g in d["generators"].items()
        }
        embedding = None
        if d.get("embedding") is not None:
            embedding = tuple(tuple(row) for row in d["embedding"])
        return cls(
            name=d["name"],
            k=d["k"],
            n=d["n"],
            gram=gram,
            generators=gens,
            relations=tuple(d.get("relations", ())),
            embedding=embedding,
        )


@dataclass
class ValidationReport:
    issues: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.issues

    def add(self, msg: str):
        self.issues.append(msg)


def validate(cluster: ClusterSpec) -> ValidationReport:
    """Check all ClusterSpec invariants and declared presentation relations."""
    report = ValidationReport()
    g = cluster.gram
    if g.rows != cluster.k or g.cols != cluster.k:
        report.add(f"gram is {g.rows}x{g.cols}, expected {cluster.k}x{cluster.k}")
        return report
    if not g.is_symmetric():
        report.add("gram is not symmetric")
    for i in range(cluster.k):
        if g[i, i].sign() <= 0:
            report.add(f"gram diagonal entry {i+1} is not positive")
    r = rank(g)
    if r != cluster.n:
        report.add(f"gram has rank {r}, expected physical dimension {cluster.n}")
    for name, p in sorted(cluster.generators.items()):
        if p.size != cluster.k:
            report.add(f"generator {name} has size {p.size}, expected {cluster.k}")
            continue
        for i in range(cluster.k):
            for j in range(cluster.k):
                lhs = g[p.images[i], p.images[j]] * (p.signs[i] * p.signs[j])
                if lhs != g[i, j]:
                    report.add(
                        f"generator {name} breaks gram preservation at "
                        f"({i+1},{j+1})"
                    )
                    break
            else:
                continue
            break
    for word in cluster.relations:
        e = SignedPermutation.identity(cluster.k)
        try:
            for ch in word:
                e = cluster.generators[ch].compose(e)
        except KeyError:
            report.add(f"relation {word!r} uses an unknown generator")
            continue
        if not e.is_identity():
            report.add(f"relation {word!r} does not compose to the identity")
    if cluster.embedding is not None:
        if len(cluster.embedding) != cluster.k or any(
            len(row) != cluster.n for row in cluster.embedding
        ):
            report.add("embedding shape mismatch")
        else:
            for i in range(cluster.k):
                for j in range(cluster.k):
                    dot = sum(
                        a * b for a, b in zip(cluster.embedding[i], cluster.embedding[j])
                    )
                    if abs(dot - g[i, j].to_float()) > 1e-12:
                        report.add(
                            f"embedding disagrees with gram at ({i+1},{j+1})"
                        )
                        break
                else:
                    continue
                break
    return report


# -- exact coordinate helpers -------------------------------------------------

def _gs(a, b=0):
    return GoldenScalar(mpq(a), mpq(b))


HALF = _gs(mpq(1, 2))
TAU_HALF = _gs(mpq(1, 4), mpq(1, 4))          # tau/2
TAUM1_HALF = _gs(mpq(-1, 4), mpq(1, 4))       # (tau-1)/2

#: Icosahedral rotation generators acting on physical 3-space (exact).
ROT_A = GoldenMatrix([
    [TAUM1_HALF, -TAU_HALF, HALF],
    [TAU_HALF, HALF, TAUM1_HALF],
    [-HALF, TAUM1_HALF, TAU_HALF],
])
ROT_B = GoldenMatrix([
    [-ONE, ZERO, ZERO],
    [ZERO, -ONE, ZERO],
    [ZERO, ZERO, ONE],
])

TAU_M1 = TAU - ONE

#: Icosahedron vertex representatives, ordered so the projector matches the
#: circulant sign pattern used throughout (pole first, equator cyclic).
ICOSAHEDRON_COORDS = [
    vec([ONE, TAU, ZERO]),
    vec([-ONE, TAU, ZERO]),
    vec([ZERO, ONE, TAU]),
    vec([TAU, ZERO, ONE]),
    vec([TAU, ZERO, -ONE]),
    vec([ZERO, ONE, -TAU]),
]

#: Dodecahedron vertex representatives.
DODECAHEDRON_COORDS = [
    vec([ONE, ONE, ONE]),
    vec([ZERO, TAU, TAU_M1]),
    vec([-ONE, ONE, ONE]),
    vec([ONE - TAU, ZERO, TAU]),
    vec([TAU_M1, ZERO, TAU]),
    vec([ONE, -ONE, ONE]),
    vec([TAU, TAU_M1, ZERO]),
    vec([ZERO, TAU, ONE - TAU]),
    vec([-TAU, TAU_M1, ZERO]),
    vec([-ONE, -ONE, ONE]),
]


def gram_from_coords(coords) -> GoldenMatrix:
    return GoldenMatrix([[vec_dot(u, v) for v in coords] for u in coords])


def signed_permutation_from_action(rotation: GoldenMatrix, coords) -> SignedPermutation:
    """Match g(e_j) against +-e_i to build the signed permutation."""
    images = []
    signs = []
    index = {tuple(v): (i, 1) for i, v in enumerate(coords)}
    index.update({tuple(vec([-x for x in v])): (i, -1) for i, v in enumerate(coords)})
    for v in coords:
        w = tuple(rotation @ v)
        hit = index.get(w)
        if hit is None:
            raise ValueError("rotation does not preserve the cluster")
        images.append(hit[0])
        signs.append(hit[1])
    return SignedPermutation(images, signs)


def orbit_closure(rotations, seeds, bound: int = 1000):
    """All images of the seed vectors under the generated rotation group."""
    seen = {tuple(vec(s)) for s in seeds}
    frontier = list(seen)
    while frontier:
        new = []
        for v in frontier:
            for rot in rotations:
                w = tuple(rot @ vec(v))
                if w not in seen:
                    seen.add(w)
                    new.append(w)
                    if len(seen) > bound:
                        raise ValueError("orbit closure exceeds bound")
        frontier = new
    return seen


def _pair_representatives(orbit):
    """One representative per +-pair, first nonzero coordinate positive."""
    reps = set()
    for v in orbit:
        lead = next((x for x in v if not x.is_zero()), None)
        if lead is None:
            raise ValueError("null vector in orbit")
        if lead.sign() < 0:
            v = tuple(-x for x in v)
        reps.add(v)
    return sorted(reps, reverse=True)


def _float_rows(coords):
    return tuple(tuple(x.to_float() for x in v) for v in coords)


def _cluster_from_coords(name, coords, relations):
    coords = [vec(c) for c in coords]
    gens = {
        "a": signed_permutation_from_action(ROT_A, coords),
        "b": signed_permutation_from_action(ROT_B, coords),
    }
    return ClusterSpec(
        name=name,
        k=len(coords),
        n=3,
        gram=gram_from_coords(coords),
        generators=gens,
        relations=relations,
        embedding=_float_rows(coords),
        exact_coords=tuple(coords),
    )


Y_RELATIONS = ("aaaaa", "bb", "ababab")
D10_RELATIONS = ("aaaaaaaaaa", "bb", "abab")


def _decagon() -> ClusterSpec:
    # gram[i][j] = cos(72 deg * (i-j)); distances 1,4 give cos 72, 2,3 give
    # cos 144 = -cos 36.  Cartesian sines are outside Q(sqrt5), so this is
    # the one catalog entry defined by its Gram matrix alone.
    cos72 = _gs(mpq(-1, 4), mpq(1, 4))
    cos144 = _gs(mpq(-1, 4), mpq(-1, 4))
    ring = {0: ONE, 1: cos72, 2: cos144, 3: cos144, 4: cos72}
    gram = GoldenMatrix([[ring[(i - j) % 5] for j in range(5)] for i in range(5)])
    # rotation by 36 deg: e_j -> -e_{j+3}; mirror: e_1 fixed, e_j <-> e_{7-j}
    a = SignedPermutation([3, 4, 0, 1, 2], [-1, -1, -1, -1, -1])
    b = SignedPermutation([0, 4, 3, 2, 1], [1, 1, 1, 1, 1])
    embedding = tuple(
        (math.cos(2 * math.pi * j / 5), math.sin(2 * math.pi * j / 5))
        for j in range(5)
    )
    return ClusterSpec(
        name="decagon",
        k=5,
        n=2,
        gram=gram,
        generators={"a": a, "b": b},
        relations=D10_RELATIONS,
        embedding=embedding,
    )


def _icosidodecahedron() -> ClusterSpec:
    orbit = orbit_closure([ROT_A, ROT_B], [vec([ONE, ZERO, ZERO])])
    coords = _pair_representatives(orbit)
    if len(coords) != 15:
        raise RuntimeError(f"expected 15 +-pairs, got {len(coords)}")
    return _cluster_from_coords("icosidodecahedron", coords, Y_RELATIONS)


def two_shell(alpha, beta) -> ClusterSpec:
    """The 16-vector cluster: alpha-scaled icosahedron plus beta-scaled
    dodecahedron shells; alpha, beta positive rationals."""
    alpha = GoldenScalar(mpq(alpha))
    beta = GoldenScalar(mpq(beta))
    if not (alpha.is_rational() and beta.is_rational()):
        raise ValueError("shell scales must be rational")
    if alpha.sign() <= 0 or beta.sign() <= 0:
        raise ValueError("shell scales must be positive")
    coords = [tuple(alpha * x for x in v) for v in ICOSAHEDRON_COORDS]
    coords += [tuple(beta * x for x in v) for v in DODECAHEDRON_COORDS]
    cl = _cluster_from_coords(
        f"two_shell({alpha},{beta})", coords, Y_RELATIONS
    )
    if rank(cl.gram) != 3:
        raise ValueError("two-shell gram is rank deficient")
    return cl


_CATALOG_BUILDERS = {
    "decagon": _decagon,
    "icosahedron": lambda: _cluster_from_coords(
        "icosahedron", ICOSAHEDRON_COORDS, Y_RELATIONS
    ),
    "dodecahedron": lambda: _cluster_from_coords(
        "dodecahedron", DODECAHEDRON_COORDS, Y_RELATIONS
    ),
    "icosidodecahedron": _icosidodecahedron,
}

CATALOG_NAMES = ("decagon", "icosahedron", "dodecahedron",
                 "icosidodecahedron", "two_shell")


def catalog(name: str, alpha=None, beta=None) -> ClusterSpec:
    """Catalog entries: decagon, icosahedron, dodecahedron,
    icosidodecahedron, two_shell (requires alpha, beta)."""
    if name == "two_shell":
        if alpha is None or beta is None:
            raise ValueError("two_shell needs alpha and beta")
        return two_shell(alpha, beta)
    if alpha is not None or beta is not None:
        raise ValueError(f"cluster {name!r} takes no shell scales")
    try:
        builder = _CATALOG_BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown cluster {name!r}") from None
    return builder()
