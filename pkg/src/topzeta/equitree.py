"""Decorated resolution trees for plane curve singularities.

A tree is a nested structure of bamboos.  A bamboo is a slope-increasing
list of faces; a face carries a coprime pair ``(a, b)`` with both entries
at least two, plus a nonempty list of branch classes.  A branch class is
either a :class:`Leaf` (a single smooth branch of the curve) or a whole
sub-bamboo describing how that class of branches keeps splitting after
the toric modification attached at this face.

``annotate`` runs the multiplicity recursion: every face receives its
class multiplicities, prefix and suffix weights, the multiplicity of the
pullback of the curve along its divisor, the log-discrepancy style weight
``nu``, and the constant chain determinant of the cone segment above it.
Each sub-bamboo inherits the pair ``(mult, nu)`` of its attachment face
as its base context; the root bamboo starts from ``(0, 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import NamedTuple, Union


@dataclass(frozen=True)
class Leaf:
    """A single smooth irreducible branch; class multiplicity one."""


LEAF = Leaf()


@dataclass(frozen=True)
class Face:
    a: int
    b: int
    classes: tuple

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))


@dataclass(frozen=True)
class Bamboo:
    faces: tuple

    def __post_init__(self):
        object.__setattr__(self, "faces", tuple(self.faces))


BranchClass = Union[Leaf, Bamboo]


class Diagnostic(NamedTuple):
    path: str
    message: str

    def __str__(self):
        return f"{self.message} at path {self.path}"


class TreeJSONError(ValueError):
    """Structural violation of the tree JSON schema."""

    def __init__(self, message, path):
        super().__init__(f"{message} at path {path or '/'}")
        self.path = path


def validate(tree: Bamboo) -> list[Diagnostic]:
    """Check all structural constraints; empty list means valid."""
    out = []
    _validate_bamboo(tree, "", out)
    return out


def _validate_bamboo(bamboo, path, out):
    if not isinstance(bamboo, Bamboo):
        out.append(Diagnostic(path or "/", "not a bamboo"))
        return
    if not bamboo.faces:
        out.append(Diagnostic(f"{path}/faces", "bamboo has no faces"))
        return
    prev = None
    for i, face in enumerate(bamboo.faces):
        fpath = f"{path}/faces/{i}"
        if not isinstance(face, Face):
            out.append(Diagnostic(fpath, "not a face"))
            continue
        if not (isinstance(face.a, int) and isinstance(face.b, int)):
            out.append(Diagnostic(fpath, "a and b must be integers"))
            continue
        if face.a < 2:
            out.append(Diagnostic(fpath, "a < 2"))
        if face.b < 2:
            out.append(Diagnostic(fpath, "b < 2"))
        if face.a >= 1 and face.b >= 1 and gcd(face.a, face.b) != 1:
            out.append(Diagnostic(fpath, "gcd(a,b) != 1"))
        if prev is not None and prev[0] * face.b - prev[1] * face.a <= 0:
            out.append(Diagnostic(fpath, "slope order violated"))
        prev = (face.a, face.b)
        if not face.classes:
            out.append(Diagnostic(f"{fpath}/classes", "face has no branch classes"))
        for l, cls in enumerate(face.classes):
            if isinstance(cls, Leaf):
                continue
            _validate_bamboo(cls, f"{fpath}/classes/{l}", out)


def class_multiplicity(cls: BranchClass) -> int:
    """Multiplicity of a branch class: 1 for a leaf, sum of a_t * A_t over
    the faces of a sub-bamboo otherwise."""
    if isinstance(cls, Leaf):
        return 1
    total = 0
    for face in cls.faces:
        face_mult = sum(class_multiplicity(c) for c in face.classes)
        total += face.a * face_mult
    return total


def leaves(tree: Bamboo):
    """All leaf positions as (bamboo path, face index, class index), in
    depth-first order.  The number of leaves equals the number of
    irreducible branches of the curve."""
    out = []

    def walk(bamboo, path):
        for i, face in enumerate(bamboo.faces):
            for l, cls in enumerate(face.classes):
                if isinstance(cls, Leaf):
                    out.append((path, i, l))
                else:
                    walk(cls, path + ((i, l),))

    walk(tree, ())
    return out


@dataclass(frozen=True)
class AnnotatedFace:
    a: int
    b: int
    classes: tuple
    class_mults: tuple[int, ...]
    face_mult: int          # A: total multiplicity of the branch classes
    alpha: int              # base_mult + sum of b_t * A_t over faces up to here
    beta: int               # sum of a_t * A_t over the later faces
    mult: int               # multiplicity N of the pullback on this divisor
    nu: int                 # a * base_nu + b
    chain_det: int          # base_nu * beta - alpha, constant on the segment above


@dataclass(frozen=True)
class AnnotatedBamboo:
    path: tuple             # ((face index, class index), ...) from the root
    base_mult: int
    base_nu: int
    beta0: int              # sum of a_t * A_t over all faces
    chain_det0: int         # base_nu * beta0 - base_mult
    faces: tuple[AnnotatedFace, ...]


@dataclass(frozen=True)
class AnnotatedTree:
    bamboos: tuple[AnnotatedBamboo, ...]   # depth-first, parents first

    @property
    def root(self) -> AnnotatedBamboo:
        return self.bamboos[0]

    def bamboo(self, path) -> AnnotatedBamboo:
        for b in self.bamboos:
            if b.path == tuple(path):
                return b
        raise KeyError(f"no bamboo at path {path}")


def annotate(tree: Bamboo) -> AnnotatedTree:
    """Run the multiplicity recursion over the whole tree.

    Raises ValueError when validation fails.  Within every bamboo the
    suffix weight of the last face is zero, so its multiplicity is
    divisible by its a; in the root bamboo the multiplicity of the first
    face is divisible by its b.  Both facts are asserted here because the
    monodromy computation divides by exactly these factors.
    """
    problems = validate(tree)
    if problems:
        raise ValueError(str(problems[0]))
    bamboos = []

    def walk(bamboo, path, base_mult, base_nu):
        per_class = [[class_multiplicity(c) for c in f.classes] for f in bamboo.faces]
        face_mults = [sum(ms) for ms in per_class]
        k = len(bamboo.faces)
        suffix = [0] * (k + 1)
        for i in range(k - 1, -1, -1):
            suffix[i] = suffix[i + 1] + bamboo.faces[i].a * face_mults[i]
        faces = []
        alpha = base_mult
        for i, f in enumerate(bamboo.faces):
            alpha += f.b * face_mults[i]
            beta = suffix[i + 1]
            mult = f.a * alpha + f.b * beta
            nu = f.a * base_nu + f.b
            assert mult > base_mult and nu > base_nu
            faces.append(AnnotatedFace(
                a=f.a, b=f.b, classes=f.classes,
                class_mults=tuple(per_class[i]), face_mult=face_mults[i],
                alpha=alpha, beta=beta, mult=mult, nu=nu,
                chain_det=base_nu * beta - alpha,
            ))
        assert faces[-1].mult == bamboo.faces[-1].a * faces[-1].alpha
        if base_mult == 0:
            assert faces[0].mult == bamboo.faces[0].b * suffix[0]
        bamboos.append(AnnotatedBamboo(
            path=path, base_mult=base_mult, base_nu=base_nu,
            beta0=suffix[0], chain_det0=base_nu * suffix[0] - base_mult,
            faces=tuple(faces),
        ))
        for i, f in enumerate(bamboo.faces):
            for l, cls in enumerate(f.classes):
                if isinstance(cls, Bamboo):
                    walk(cls, path + ((i, l),), faces[i].mult, faces[i].nu)

    walk(tree, (), 0, 1)
    return AnnotatedTree(tuple(bamboos))


# ---------------------------------------------------------------------------
# JSON schema: {"faces": [{"a": int, "b": int, "classes": ["leaf" | {...}]}]}
# Unknown keys are rejected; booleans are not integers.

def tree_from_json(data) -> Bamboo:
    return _bamboo_from_json(data, "")


def _bamboo_from_json(obj, path):
    if not isinstance(obj, dict):
        raise TreeJSONError("expected an object", path)
    extra = set(obj) - {"faces"}
    if extra:
        raise TreeJSONError(f"unknown keys {sorted(extra)}", path)
    if "faces" not in obj:
        raise TreeJSONError("missing key 'faces'", path)
    if not isinstance(obj["faces"], list):
        raise TreeJSONError("'faces' must be a list", f"{path}/faces")
    faces = []
    for i, fobj in enumerate(obj["faces"]):
        faces.append(_face_from_json(fobj, f"{path}/faces/{i}"))
    return Bamboo(tuple(faces))


def _face_from_json(obj, path):
    if not isinstance(obj, dict):
        raise TreeJSONError("expected an object", path)
    extra = set(obj) - {"a", "b", "classes"}
    if extra:
        raise TreeJSONError(f"unknown keys {sorted(extra)}", path)
    for key in ("a", "b", "classes"):
        if key not in obj:
            raise TreeJSONError(f"missing key '{key}'", path)
    for key in ("a", "b"):
        if type(obj[key]) is not int:
            raise TreeJSONError(f"'{key}' must be an integer", f"{path}/{key}")
    if not isinstance(obj["classes"], list):
        raise TreeJSONError("'classes' must be a list", f"{path}/classes")
    classes = []
    for l, cobj in enumerate(obj["classes"]):
        cpath = f"{path}/classes/{l}"
        if cobj == "leaf":
            classes.append(LEAF)
        elif isinstance(cobj, dict):
            classes.append(_bamboo_from_json(cobj, cpath))
        else:
            raise TreeJSONError("expected \"leaf\" or a sub-bamboo object", cpath)
    return Face(obj["a"], obj["b"], tuple(classes))


def tree_to_json(tree: Bamboo) -> dict:
    return {
        "faces": [
            {
                "a": f.a,
                "b": f.b,
                "classes": [
                    "leaf" if isinstance(c, Leaf) else tree_to_json(c)
                    for c in f.classes
                ],
            }
            for f in tree.faces
        ]
    }
