"""Abstract open books and their first-homology invariants.

An abstract open book is a page Sigma_{g,n} (n >= 1) together with a
monodromy word.  The closed manifold it presents is the mapping torus
of the page glued to one solid torus per boundary component.

First homology comes out of the Mayer-Vietoris sequence for that
gluing.  Writing Phi for the homology action of the monodromy:

    H1(mapping torus) = Z (+) coker(Phi - I)

and each solid torus kills the section circle over its boundary
component.  Picking the base component as reference, the section over
component i differs from the base section by the defect class
delta_i = [phi(r_i) - r_i] of the arc r_i, so

    H1(closed manifold) = Z^{2g+n-1} / (im(Phi - I) + <delta_1..delta_{n-1}>).

Positive stabilization plumbs a band onto the page and prepends one
positive twist along a curve crossing the band once.  The output open
book carries the pushforward of the input's curve classes through the
inclusion of pages (an "attached" configuration); when those classes
match default-system classes the result is renamed onto the default
configuration.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .intlinalg import AbelianGroup, IntMatrix, cokernel
from .mcg import TwistWord, WordSyntaxError, format_word, parse_word, word_action, arc_defect
from .surface import (ArcSystem, ConfiguredCurve, CurveConfig, H1Basis, Surface,
                      config_from_dict, config_to_dict, lickorish_system)

FORMAT_HEADER = "openbook v1"


class OpenBookParseError(ValueError):
    """Malformed open-book text; carries the offending line number."""

    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class AbstractOpenBook:
    """A (page, monodromy word) pair presenting a closed 3-manifold."""

    page: Surface
    word: TwistWord
    config: CurveConfig
    label: str = None

    def __post_init__(self):
        if self.page.boundary_count < 1:
            raise ValueError("page must have boundary")
        if self.config.surface != self.page:
            raise ValueError("configuration belongs to a different surface")
        for name, _ in self.word:
            if not self.config.has_curve(name):
                raise ValueError(f"monodromy letter {name!r} is not a configured curve")

    @classmethod
    def with_default_config(cls, page, word=TwistWord(), label=None):
        cfg, _ = lickorish_system(page)
        return cls(page, word, cfg, label)

    def basis(self):
        return H1Basis.for_surface(self.page)

    def arcs(self):
        return ArcSystem(self.page)

    def to_dict(self):
        d = {"genus": self.page.genus,
             "boundary": self.page.boundary_count,
             "word": format_word(self.word)}
        if not self.config.standard:
            d["config"] = config_to_dict(self.config)
        if self.label:
            d["label"] = self.label
        return d

    @classmethod
    def from_dict(cls, data):
        page = Surface(int(data["genus"]), int(data["boundary"]))
        word = parse_word(data.get("word", ""))
        if data.get("config"):
            cfg = config_from_dict(data["config"], page, standard=False)
        else:
            cfg, _ = lickorish_system(page)
        return cls(page, word, cfg, data.get("label"))


def parse_openbook(text):
    """Parse the open-book text format.

    Four fixed lines (header, genus, boundary, word) and one optional
    ``config <json>`` line carrying an attached configuration.
    """
    lines = text.splitlines()
    if not lines or lines[0].strip() != FORMAT_HEADER:
        raise OpenBookParseError(1, f"expected header {FORMAT_HEADER!r}")

    def field_line(idx, key):
        if len(lines) <= idx:
            raise OpenBookParseError(idx + 1, f"missing {key!r} line")
        line = lines[idx]
        if line != key and not line.startswith(key + " "):
            raise OpenBookParseError(idx + 1, f"expected {key!r} line, got {line!r}")
        return line[len(key):].strip()

    g_text = field_line(1, "genus")
    try:
        genus = int(g_text)
        if genus < 0:
            raise ValueError
    except ValueError:
        raise OpenBookParseError(2, f"genus must be a nonnegative integer, got {g_text!r}")

    n_text = field_line(2, "boundary")
    try:
        boundary = int(n_text)
        if boundary < 1:
            raise ValueError
    except ValueError:
        raise OpenBookParseError(3, f"boundary must be a positive integer, got {n_text!r}")

    word_text = field_line(3, "word")
    try:
        word = parse_word(word_text)
    except WordSyntaxError as exc:
        raise OpenBookParseError(4, str(exc))

    page = Surface(genus, boundary)
    cfg = None
    extra = [(i, ln) for i, ln in enumerate(lines[4:], start=5) if ln.strip()]
    for lineno, line in extra:
        if line.startswith("config "):
            if cfg is not None:
                raise OpenBookParseError(lineno, "duplicate config line")
            try:
                cfg = config_from_dict(json.loads(line[len("config "):]), page,
                                       standard=False)
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise OpenBookParseError(lineno, f"bad config payload: {exc}")
        else:
            raise OpenBookParseError(lineno, f"unexpected line {line!r}")

    if cfg is None:
        cfg, _ = lickorish_system(page)
    try:
        return AbstractOpenBook(page, word, cfg)
    except ValueError as exc:
        raise OpenBookParseError(4, str(exc))


def serialize_openbook(ob):
    lines = [FORMAT_HEADER,
             f"genus {ob.page.genus}",
             f"boundary {ob.page.boundary_count}",
             ("word " + format_word(ob.word)).rstrip()]
    if not ob.config.standard:
        payload = json.dumps(config_to_dict(ob.config),
                             sort_keys=True, separators=(",", ":"))
        lines.append("config " + payload)
    return "\n".join(lines) + "\n"


def read_openbook(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_openbook(fh.read())


def write_openbook(ob, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_openbook(ob))


@dataclass(frozen=True)
class MappingTorusModel:
    """Homological model of the page's mapping torus.

    action is the (unimodular) monodromy matrix Phi; defects are the
    boundary-section classes delta_1..delta_{n-1} that the filling of
    the open book kills.
    """

    page: Surface
    action: IntMatrix
    defects: tuple


def mapping_torus_model(ob):
    basis = ob.basis()
    phi = word_action(ob.word, ob.config, basis)
    arcs = ob.arcs()
    defects = tuple(arc_defect(ob.word, i, ob.config, arcs, basis)
                    for i in range(1, arcs.count + 1))
    return MappingTorusModel(ob.page, phi, defects)


def mapping_torus_h1(ob):
    """H1 of the page's mapping torus: Z (+) coker(Phi - I)."""
    model = mapping_torus_model(ob)
    phi, rank = model.action, model.action.rows
    rows = [[phi.entry(i, j) - (1 if i == j else 0) for j in range(rank)]
            for i in range(rank)]
    c = cokernel(IntMatrix(rank, rank, rows))
    return AbelianGroup(c.free_rank + 1, c.torsion)


def closed_h1(ob):
    """H1 of the closed manifold presented by the open book."""
    model = mapping_torus_model(ob)
    phi, rank = model.action, model.action.rows
    cols = rank + len(model.defects)
    rows = []
    for i in range(rank):
        row = [phi.entry(i, j) - (1 if i == j else 0) for j in range(rank)]
        row.extend(d[i] for d in model.defects)
        rows.append(row)
    return cokernel(IntMatrix(rank, cols, rows))


@dataclass(frozen=True)
class SameBoundary:
    """Plumb with both band feet on boundary component j."""

    j: int


@dataclass(frozen=True)
class JoinBoundaries:
    """Plumb with the band joining distinct components j and k."""

    j: int
    k: int


def _push_classes(images, vector):
    """Apply a basis map given by per-coordinate image vectors."""
    if not images:
        return ()
    dim = len(images[0]) if images else 0
    out = [0] * dim
    for coeff, img in zip(vector, images):
        if coeff:
            for idx, x in enumerate(img):
                out[idx] += coeff * x
    return tuple(out)


def _same_boundary_images(g, n, j):
    """Image vectors for H1(Sigma_{g,n}) -> H1(Sigma_{g,n+1}).

    The split-off piece of component j becomes the new surface's last
    puncture (component n); the base keeps its role as component n+1.
    The only basis class that changes shape is D_j, whose loop now
    encircles both pieces.
    """
    old_rank = 2 * g + max(n - 1, 0)
    new_rank = 2 * g + n

    def unit(idx):
        return tuple(1 if k == idx else 0 for k in range(new_rank))

    images = [unit(i) for i in range(2 * g)]
    for m in range(1, n):
        if m == j:
            img = tuple(a + b for a, b in
                        zip(unit(2 * g + m - 1), unit(2 * g + n - 1)))
        else:
            img = unit(2 * g + m - 1)
        images.append(img)
    assert len(images) == old_rank
    fresh = unit(2 * g + n - 1)
    return images, fresh


def _join_images(g, n, j, k):
    """Image vectors for H1(Sigma_{g,n}) -> H1(Sigma_{g+1,n-1}).

    The merged component becomes the new base.  The loop around old
    component j survives as the new B_{g+1}; the curve over the band,
    crossing it once, is the new A_{g+1}.  When neither j nor k is the
    old base, the old base is demoted to the last puncture and the
    loop around component k is rewritten through the relation that all
    boundary classes sum to zero.
    """
    new_g = g + 1
    new_n = n - 1
    new_rank = 2 * new_g + max(new_n - 1, 0)

    def unit(idx):
        return tuple(1 if x == idx else 0 for x in range(new_rank))

    a_new, b_new = unit(2 * g), unit(2 * g + 1)
    images = [unit(i) for i in range(2 * g)]

    if k == n:
        # holes other than j keep their order; base stays base
        sigma = {}
        nxt = 1
        for m in range(1, n):
            if m != j:
                sigma[m] = nxt
                nxt += 1
        for m in range(1, n):
            if m == j:
                images.append(b_new)
            else:
                images.append(unit(2 * new_g + sigma[m] - 1))
    else:
        # two punctures merge; old base becomes the last puncture
        sigma = {}
        nxt = 1
        for m in range(1, n):
            if m not in (j, k):
                sigma[m] = nxt
                nxt += 1
        minus_all_d = tuple(-1 if x >= 2 * new_g else 0 for x in range(new_rank))
        for m in range(1, n):
            if m == j:
                images.append(b_new)
            elif m == k:
                images.append(tuple(x - y for x, y in zip(minus_all_d, b_new)))
            else:
                images.append(unit(2 * new_g + sigma[m] - 1))
    return images, a_new


def _fresh_name(taken):
    i = 1
    while f"s{i}" in taken:
        i += 1
    return f"s{i}"


def _canonicalize(page, curves, word):
    """Try to rename pushforward curves onto the default configuration.

    Succeeds when every class matches a default class exactly or up to
    sign (a twist cannot see the curve's orientation) with distinct
    targets; returns None otherwise.
    """
    default_cfg, _ = lickorish_system(page)
    defaults = list(default_cfg.curves)
    mapping = {}
    used = set()
    for c in curves:
        target = None
        for d in defaults:
            if d.name not in used and d.homology_class == c.homology_class:
                target = d
                break
        if target is None:
            neg = tuple(-x for x in c.homology_class)
            for d in defaults:
                if d.name not in used and d.homology_class == neg:
                    target = d
                    break
        if target is None:
            return None
        mapping[c.name] = target.name
        used.add(target.name)
    return AbstractOpenBook(page, word.rename(mapping), default_cfg)


def stabilize_positive(ob, attachment):
    """Positive stabilization of an open book; preserves the manifold.

    same_boundary(j) splits component j, giving Sigma_{g,n+1};
    join_boundaries(j,k) merges two distinct components, giving
    Sigma_{g+1,n-1}.  The new word is one positive twist along the
    fresh over-the-band curve followed by the old word.
    """
    g, n = ob.page.genus, ob.page.boundary_count

    if isinstance(attachment, SameBoundary):
        j = attachment.j
        if not 1 <= j <= n:
            raise ValueError(f"attachment index {j} out of range 1..{n}")
        new_page = Surface(g, n + 1)
        images, fresh_class = _same_boundary_images(g, n, j)
    elif isinstance(attachment, JoinBoundaries):
        j, k = attachment.j, attachment.k
        if j == k:
            raise ValueError("join requires two distinct boundary components")
        if not (1 <= j <= n and 1 <= k <= n):
            raise ValueError(f"attachment indices ({j},{k}) out of range 1..{n}")
        j, k = min(j, k), max(j, k)
        new_page = Surface(g + 1, n - 1)
        images, fresh_class = _join_images(g, n, j, k)
    else:
        raise TypeError(f"unknown attachment {attachment!r}")

    kept_names = list(dict.fromkeys(name for name, _ in ob.word))
    fresh = _fresh_name(set(kept_names))
    pushed = [ConfiguredCurve(fresh, "boundary_parallel"
                              if isinstance(attachment, SameBoundary) else "handle_a",
                              fresh_class)]
    for name in kept_names:
        old = ob.config.curve(name)
        pushed.append(ConfiguredCurve(name, old.kind,
                                      _push_classes(images, old.homology_class)))
    new_word = TwistWord(((fresh, 1),) + ob.word.letters)

    canonical = _canonicalize(new_page, pushed, new_word)
    if canonical is not None:
        return AbstractOpenBook(canonical.page, canonical.word, canonical.config,
                                ob.label)
    cfg = CurveConfig(new_page, pushed, standard=False)
    return AbstractOpenBook(new_page, new_word, cfg, ob.label)


def reduce_to_one_boundary(ob):
    """Join boundary components until a single one remains.

    Each step is a positive stabilization, so the closed manifold and
    its homology are unchanged.
    """
    while ob.page.boundary_count > 1:
        n = ob.page.boundary_count
        ob = stabilize_positive(ob, JoinBoundaries(n - 1, n))
    return ob


def _core_twist_total(ob):
    """Total core-twist power of an annulus-page word, or None.

    On the annulus every essential curve is the core; a letter whose
    class is +-D1 twists along it either way.  Null classes bound
    disks and twist trivially, so they are ignored.
    """
    if (ob.page.genus, ob.page.boundary_count) != (0, 2):
        return None
    total = 0
    for name, exp in ob.word:
        cls = ob.config.curve(name).homology_class
        if cls in ((1,), (-1,)):
            total += exp
        elif cls != (0,):
            return None
    return total


def identify_known(ob):
    """Catalog name of the presented manifold, or None.

    Only exact catalog matches are reported; H1 alone never names a
    manifold.
    """
    g, n = ob.page.genus, ob.page.boundary_count
    if g == 0 and n == 1 and ob.word.is_empty():
        return "S3"
    if g == 0 and n == 2:
        k = _core_twist_total(ob)
        if k is None:
            return None
        if k == 0:
            return "S1xS2"
        if k in (1, -1):
            return "S3"
        if k >= 2:
            return f"L({k},1)"
        return None
    if g == 0 and n >= 3 and ob.word.is_empty():
        return f"#{n - 1}(S1xS2)"
    return None
