"""Builders and validators for embedding certificates.

The constructions here are recorded structurally: an isotopy becomes
an ordered schedule step with a level, a disjointness claim becomes a
checklist entry with a reason code.  The validator re-derives every
invariant from the serialized certificate alone and trusts nothing
the builder did.

Certificate wire format (JSON): top-level keys are exactly
{kind, version, input, scene, schedule, checks}, version 1.
"""

from __future__ import annotations

import json

from .openbook import AbstractOpenBook, closed_h1, reduce_to_one_boundary
from .surface import Surface, lickorish_system

VERSION = 1

KIND_FLEXIBLE = "flexible_page_embedding"
KIND_WITNESS = "openbook_embedding_witness"
KIND_ANNULUS = "annulus_trivial_s5"
KIND_S5PLAN = "s5_plan"

TARGET_EVEN = "S3xS2"
TARGET_ODD = "twisted"

ZERO_SECTION_PIECES = ("handle_core_disk", "attaching_circle_cylinder", "bottom_disk")
SURFACE_PIECES = ("page_body", "capping_disk", "boundary_cylinder")
AVOIDANCE_REASONS = ("different_level", "inside_complement_solid_torus",
                     "handle_side_disjointness")

_TOP_KEYS = {"kind", "version", "input", "scene", "schedule", "checks"}

# Disjointness reasons, one per (surface piece, zero-section piece) pair.
_AVOIDANCE_TABLE = {
    ("page_body", "handle_core_disk"): "handle_side_disjointness",
    ("page_body", "attaching_circle_cylinder"): "inside_complement_solid_torus",
    ("page_body", "bottom_disk"): "different_level",
    ("capping_disk", "handle_core_disk"): "handle_side_disjointness",
    ("capping_disk", "attaching_circle_cylinder"): "handle_side_disjointness",
    ("capping_disk", "bottom_disk"): "different_level",
    ("boundary_cylinder", "handle_core_disk"): "inside_complement_solid_torus",
    ("boundary_cylinder", "attaching_circle_cylinder"): "inside_complement_solid_torus",
    ("boundary_cylinder", "bottom_disk"): "different_level",
}


def certificate_to_json(cert):
    """Canonical (byte-deterministic) serialization."""
    return json.dumps(cert, sort_keys=True, separators=(",", ":")) + "\n"


def disk_bundle_model(framing):
    """The fixed scene regions of the disk bundle DE(framing).

    DE(m) is the four-ball with a two-handle attached along an unknot
    with framing m; the zero section decomposes into the handle's core
    disk, the cylinder over the attaching circle, and the bottom disk.
    """
    return {
        "framing": framing,
        "total_space": TARGET_EVEN if framing % 2 == 0 else TARGET_ODD,
        "pieces": ["B4_interior", "collar", "attaching_region", "handle",
                   "core_disk", "cocore"],
        "collar_levels": {"binding": _ratio(1, 1), "page": _ratio(1, 2),
                          "bottom": _ratio(0, 1)},
        "zero_section": list(ZERO_SECTION_PIECES),
    }


def _ratio(num, den):
    return {"num": num, "den": den}


def _schedule_for(curve_names):
    total = len(curve_names)
    entries = []
    for idx, name in enumerate(curve_names, start=1):
        entries.append({
            "curve": name,
            "order": idx,
            "level": _ratio(idx, 2 * (total + 1)),
            "band_sum_curve": "C#bCH",
            "isotopy": ["push", "twist", "return"],
        })
    return entries


def build_flexible_embedding(page, framing, cfg=None):
    """Certificate for the flexible proper embedding of a page in DE(m).

    The scene removes one disk per boundary component from the closed
    surface, attaches a full-twist band on the first disk to create a
    Hopf boundary pair, caps one Hopf boundary with the handle-side
    disk, and runs every generator twist at its own collar level in
    (0, 1/2).
    """
    g, n = page.genus, page.boundary_count
    if n < 1:
        raise ValueError("page must have boundary")
    if cfg is None:
        cfg, _ = lickorish_system(page)
    names = list(cfg.names())
    scene = {
        "removed_disks": [f"D{i}" for i in range(1, n + 1)],
        "twisted_band": {"on_disk": "D1", "full_twists": 1},
        "hopf_boundary_pair": ["H1", "H2"],
        "capping_disk": {"caps": "H1", "side": "handle", "center_curve_shrinks": True},
        "boundary_cylinders": [
            {"disk": f"D{i}", "from": _ratio(1, 2), "to": _ratio(1, 1)}
            for i in range(1, n + 1)
        ],
        "intermediate_boundary_components": n + 1,
    }
    return {
        "kind": KIND_FLEXIBLE,
        "version": VERSION,
        "input": {
            "page": {"genus": g, "boundary": n},
            "framing": framing,
            "curves": names,
            "config_kind": "default" if cfg.standard else "attached",
        },
        "scene": scene,
        "schedule": _schedule_for(names),
        "checks": {
            "euler_intermediate": 1 - 2 * g - n,
            "euler_capped": 2 - 2 * g - n,
        },
    }


def build_openbook_embedding(ob, framing):
    """Witness that the open book embeds in the identity open book of DE(m).

    The page certificate provides one ambient twist per generator;
    the realization lists the word's letters in action order against
    their schedule entries.  The target's total space is S3xS2 for
    even framing and its twisted partner for odd framing.
    """
    cert = build_flexible_embedding(ob.page, framing, ob.config)
    realization = []
    for pos, (name, exp) in enumerate(reversed(ob.word.letters), start=1):
        realization.append({
            "position": pos,
            "curve": name,
            "exponent": exp,
            "schedule_ref": name,
        })
    return {
        "kind": KIND_WITNESS,
        "version": VERSION,
        "input": {"openbook": ob.to_dict(), "framing": framing},
        "scene": {
            "target": TARGET_EVEN if framing % 2 == 0 else TARGET_ODD,
            "target_openbook": {"page": f"DE({framing})", "monodromy": "identity"},
            "bundle": disk_bundle_model(framing),
            "page_certificate": cert,
        },
        "schedule": realization,
        "checks": {
            "word_length": len(ob.word),
            "framing_parity": "even" if framing % 2 == 0 else "odd",
        },
    }


def build_annulus_s5(ob):
    """Certificate embedding an annulus-page open book in the trivial
    open book of S5.

    Requires the page to be the annulus with a word of core twists;
    the realized power is the total signed exponent.
    """
    if (ob.page.genus, ob.page.boundary_count) != (0, 2):
        raise ValueError("page must be the annulus")
    power = 0
    for name, exp in ob.word:
        cls = ob.config.curve(name).homology_class
        if cls not in ((1,), (-1,)):
            raise ValueError(f"letter {name!r} is not a core (boundary-parallel) twist")
        power += exp
    return {
        "kind": KIND_ANNULUS,
        "version": VERSION,
        "input": {"openbook": ob.to_dict()},
        "scene": {
            "hopf_band": {"ambient": "S3", "boundary": ["H1", "H2"]},
            "collar_pushing": {"target": "D4", "proper": True,
                               "levels": "boundary collar"},
            "isotopy_extension": {"rule": "collar reflection",
                                  "fixes_boundary": True},
        },
        "schedule": [{"core_twist_power": power}],
        "checks": {"realized_power": power},
    }


def build_s5_plan(ob):
    """Plan embedding the closed manifold of an open book in S5.

    The input is normalized to a one-boundary page (homology must be
    unchanged, and both records are kept), the page goes into the
    standard DE(1) scene away from the zero section, and the checklist
    records why each surface piece misses each zero-section piece.
    Avoiding the zero section places everything in its complement, so
    the manifold lands in S3 x R2 and hence in S5.
    """
    before = closed_h1(ob)
    reduced = reduce_to_one_boundary(ob)
    after = closed_h1(reduced)
    if before != after:
        raise AssertionError("boundary reduction changed H1; stabilization bug")
    avoidance = [
        {"surface_piece": sp, "zero_section_piece": zp, "disjoint": True,
         "reason": _AVOIDANCE_TABLE[(sp, zp)]}
        for sp in SURFACE_PIECES for zp in ZERO_SECTION_PIECES
    ]
    realization = []
    for pos, (name, exp) in enumerate(reversed(reduced.word.letters), start=1):
        realization.append({"position": pos, "curve": name, "exponent": exp,
                            "schedule_ref": name})
    return {
        "kind": KIND_S5PLAN,
        "version": VERSION,
        "input": {"openbook": ob.to_dict(), "h1": before.as_dict()},
        "scene": {
            "normalized_openbook": reduced.to_dict(),
            "de1": {"framing": 1, "attaching_circle": "K",
                    "pushed_core_boundary": "K_prime", "linking_unknot": "U"},
            "hopf_annulus": {"level": _ratio(1, 2), "boundary": ["U", "K_prime"]},
            "handlebody": {"genus": reduced.page.genus,
                           "placement": "complement_solid_torus"},
            "connected_sum": {"pieces": ["page_body", "hopf_annulus"],
                              "band": "ambient"},
            "zero_section": list(ZERO_SECTION_PIECES),
            "avoidance": avoidance,
            "assembly": {"complement": "S3 x (0,1]", "capping": "S3 x D2",
                         "target": "S3xR2"},
        },
        "schedule": {
            "generators": _schedule_for(list(reduced.config.names())),
            "monodromy": realization,
        },
        "checks": {"h1_before": before.as_dict(), "h1_after": after.as_dict(),
                   "boundary_after": reduced.page.boundary_count},
    }


# ---------------------------------------------------------------------------
# validation


def _as_cert(cert):
    if isinstance(cert, str):
        return json.loads(cert)
    return cert


def _ratio_value(rec):
    try:
        return rec["num"], rec["den"]
    except (TypeError, KeyError):
        return None


def _check_level(rec, out, where):
    val = _ratio_value(rec)
    if val is None or val[1] == 0:
        out.append(f"{where}: malformed level")
        return
    num, den = val
    if den < 0:
        num, den = -num, -den
    if not 0 < 2 * num < den:
        out.append(f"{where}: level {val[0]}/{val[1]} outside (0, 1/2)")


def _validate_flexible(cert, out):
    inp = cert.get("input", {})
    scene = cert.get("scene", {})
    schedule = cert.get("schedule", [])
    page = inp.get("page", {})
    try:
        g, n = int(page["genus"]), int(page["boundary"])
    except (KeyError, TypeError, ValueError):
        out.append("input.page: missing or malformed genus/boundary")
        return
    if n < 1:
        out.append("page has no boundary")
        return

    names = list(inp.get("curves", []))
    if inp.get("config_kind") == "default":
        expected, _ = lickorish_system(Surface(g, n))
        if tuple(names) != expected.names():
            out.append("curve census does not match the default configuration")

    if scene.get("removed_disks") != [f"D{i}" for i in range(1, n + 1)]:
        out.append("scene: expected one removed disk per boundary component")
    band = scene.get("twisted_band", {})
    if band.get("on_disk") != "D1" or band.get("full_twists") != 1:
        out.append("scene: twisted band must carry one full twist on D1")
    if scene.get("hopf_boundary_pair") != ["H1", "H2"]:
        out.append("scene: missing Hopf boundary pair")
    cap = scene.get("capping_disk", {})
    if cap.get("side") != "handle" or not cap.get("center_curve_shrinks"):
        out.append("scene: capping disk must lie on the handle side")
    cyls = scene.get("boundary_cylinders", [])
    if len(cyls) != n or any(_ratio_value(c.get("from")) != (1, 2) or
                             _ratio_value(c.get("to")) != (1, 1) for c in cyls):
        out.append("scene: boundary cylinders must run each disk from 1/2 to 1")
    if scene.get("intermediate_boundary_components") != n + 1:
        out.append("scene: intermediate surface must have n+1 boundary components")

    seen = [e.get("curve") for e in schedule]
    if sorted(seen) != sorted(names):
        missing = set(names) - set(seen)
        extra = set(seen) - set(names)
        if missing:
            out.append(f"schedule: generators without a twist entry: {sorted(missing)}")
        if extra or len(seen) != len(set(seen)):
            out.append("schedule: duplicate or unknown generator entries")
    orders = [e.get("order") for e in schedule]
    if orders != list(range(1, len(schedule) + 1)):
        out.append("schedule: entries are not sequentially ordered")
    for e in schedule:
        _check_level(e.get("level"), out, f"schedule[{e.get('curve')}]")
        if e.get("isotopy") != ["push", "twist", "return"]:
            out.append(f"schedule[{e.get('curve')}]: isotopy must be push-twist-return")

    checks = cert.get("checks", {})
    if checks.get("euler_intermediate") != 1 - 2 * g - n:
        out.append(f"checks: euler_intermediate must be {1 - 2 * g - n}")
    if checks.get("euler_capped") != 2 - 2 * g - n:
        out.append(f"checks: euler_capped must be {2 - 2 * g - n}")


def _validate_witness(cert, out):
    inp = cert.get("input", {})
    scene = cert.get("scene", {})
    try:
        ob = AbstractOpenBook.from_dict(inp["openbook"])
    except (KeyError, TypeError, ValueError) as exc:
        out.append(f"input.openbook: {exc}")
        return
    framing = inp.get("framing")
    if not isinstance(framing, int):
        out.append("input.framing: missing integer framing")
        return
    want = TARGET_EVEN if framing % 2 == 0 else TARGET_ODD
    if scene.get("target") != want:
        out.append(f"scene.target {scene.get('target')!r} does not match framing "
                   f"parity (expected {want!r})")
    tob = scene.get("target_openbook", {})
    if tob.get("monodromy") != "identity" or tob.get("page") != f"DE({framing})":
        out.append("scene.target_openbook must be the identity open book of DE(framing)")
    bundle = scene.get("bundle", {})
    if bundle.get("framing") != framing or bundle.get("total_space") != want:
        out.append("scene.bundle does not match the framing and its parity")
    if list(bundle.get("zero_section", [])) != list(ZERO_SECTION_PIECES):
        out.append("scene.bundle: zero section must be the three-piece decomposition")

    page_cert = scene.get("page_certificate")
    if not isinstance(page_cert, dict):
        out.append("scene.page_certificate missing")
        return
    nested = validate_certificate(page_cert)
    out.extend(f"page_certificate: {v}" for v in nested)

    schedule_names = {e.get("curve") for e in page_cert.get("schedule", [])}
    realization = cert.get("schedule", [])
    action_order = list(reversed(ob.word.letters))
    if len(realization) != len(action_order):
        out.append(f"realization: uncovered letter(s): word has {len(action_order)} "
                   f"letters, realization has {len(realization)}")
    for pos, (name, exp) in enumerate(action_order, start=1):
        if pos > len(realization):
            break
        entry = realization[pos - 1]
        if entry.get("curve") != name or entry.get("exponent") != exp:
            out.append(f"realization[{pos}]: expected letter ({name}, {exp}), "
                       f"got ({entry.get('curve')}, {entry.get('exponent')})")
        elif entry.get("schedule_ref") not in schedule_names:
            out.append(f"realization[{pos}]: schedule_ref {entry.get('schedule_ref')!r} "
                       "has no schedule entry")


def _validate_annulus(cert, out):
    inp = cert.get("input", {})
    try:
        ob = AbstractOpenBook.from_dict(inp["openbook"])
    except (KeyError, TypeError, ValueError) as exc:
        out.append(f"input.openbook: {exc}")
        return
    if (ob.page.genus, ob.page.boundary_count) != (0, 2):
        out.append("page is not the annulus")
        return
    power = 0
    for name, exp in ob.word:
        cls = ob.config.curve(name).homology_class
        if cls not in ((1,), (-1,)):
            out.append(f"letter {name!r} is not a core twist")
            return
        power += exp
    if cert.get("checks", {}).get("realized_power") != power:
        out.append(f"checks.realized_power must equal the word's total exponent {power}")
    sched = cert.get("schedule", [])
    if len(sched) != 1 or sched[0].get("core_twist_power") != power:
        out.append("schedule must carry exactly the realized core twist power")


def _validate_s5_plan(cert, out):
    inp = cert.get("input", {})
    scene = cert.get("scene", {})
    checks = cert.get("checks", {})
    try:
        original = AbstractOpenBook.from_dict(inp["openbook"])
        reduced = AbstractOpenBook.from_dict(scene["normalized_openbook"])
    except (KeyError, TypeError, ValueError) as exc:
        out.append(f"openbook records: {exc}")
        return
    if reduced.page.boundary_count != 1:
        out.append("normalized page must have exactly one boundary component")
    if checks.get("boundary_after") != reduced.page.boundary_count:
        out.append("checks.boundary_after does not match the normalized page")

    h1_before = closed_h1(original).as_dict()
    h1_after = closed_h1(reduced).as_dict()
    if checks.get("h1_before") != h1_before:
        out.append("checks.h1_before does not match a recomputation")
    if checks.get("h1_after") != h1_after:
        out.append("checks.h1_after does not match a recomputation")
    if h1_before != h1_after:
        out.append("normalization changed H1")
    if inp.get("h1") != h1_before:
        out.append("input.h1 does not match a recomputation")

    de1 = scene.get("de1", {})
    if de1.get("framing") != 1:
        out.append("scene.de1: the disk bundle must have framing +1")
    for key in ("attaching_circle", "pushed_core_boundary", "linking_unknot"):
        if not de1.get(key):
            out.append(f"scene.de1: missing {key}")
    annulus = scene.get("hopf_annulus", {})
    if _ratio_value(annulus.get("level")) != (1, 2):
        out.append("scene.hopf_annulus: must sit at level 1/2")
    if scene.get("handlebody", {}).get("placement") != "complement_solid_torus":
        out.append("scene.handlebody: must sit inside the complement solid torus")
    if list(scene.get("zero_section", [])) != list(ZERO_SECTION_PIECES):
        out.append("scene.zero_section: expected the three-piece decomposition")

    pairs = {}
    for rec in scene.get("avoidance", []):
        key = (rec.get("surface_piece"), rec.get("zero_section_piece"))
        pairs[key] = rec
    for sp in SURFACE_PIECES:
        for zp in ZERO_SECTION_PIECES:
            rec = pairs.get((sp, zp))
            if rec is None:
                out.append(f"avoidance: missing pair ({sp}, {zp})")
            elif not rec.get("disjoint") or rec.get("reason") not in AVOIDANCE_REASONS:
                out.append(f"avoidance ({sp}, {zp}): not marked disjoint with a "
                           "valid reason code")
    if len(pairs) != len(SURFACE_PIECES) * len(ZERO_SECTION_PIECES):
        out.append("avoidance: duplicate or stray checklist entries")

    if scene.get("assembly", {}).get("target") != "S3xR2":
        out.append("assembly target must be S3xR2")
    if "complement" not in scene.get("assembly", {}):
        out.append("assembly must identify the zero-section complement")

    sched = cert.get("schedule", {})
    gens = sched.get("generators", [])
    want_names = list(reduced.config.names())
    if [e.get("curve") for e in gens] != want_names:
        out.append("schedule.generators must cover the normalized page's curves in order")
    for e in gens:
        _check_level(e.get("level"), out, f"schedule.generators[{e.get('curve')}]")
    realization = sched.get("monodromy", [])
    action_order = list(reversed(reduced.word.letters))
    if len(realization) != len(action_order):
        out.append("schedule.monodromy: uncovered letter(s) in the normalized word")
    else:
        for pos, (name, exp) in enumerate(action_order, start=1):
            entry = realization[pos - 1]
            if entry.get("curve") != name or entry.get("exponent") != exp:
                out.append(f"schedule.monodromy[{pos}]: letter mismatch")


_VALIDATORS = {
    KIND_FLEXIBLE: _validate_flexible,
    KIND_WITNESS: _validate_witness,
    KIND_ANNULUS: _validate_annulus,
    KIND_S5PLAN: _validate_s5_plan,
}


def validate_certificate(cert):
    """Re-check a certificate from its serialized form alone.

    Accepts a dict or a JSON string; returns a list of violations
    (empty means valid).  Unknown kinds raise ValueError.
    """
    cert = _as_cert(cert)
    out = []
    if not isinstance(cert, dict):
        raise ValueError("certificate must be a JSON object")
    kind = cert.get("kind")
    if kind not in _VALIDATORS:
        raise ValueError(f"unknown certificate kind {kind!r}")
    if cert.get("version") != VERSION:
        out.append(f"unsupported version {cert.get('version')!r}")
        return out
    extra = set(cert) - _TOP_KEYS
    missing = _TOP_KEYS - set(cert)
    if extra:
        out.append(f"unexpected top-level fields {sorted(extra)}")
    if missing:
        out.append(f"missing top-level fields {sorted(missing)}")
        return out
    _VALIDATORS[kind](cert, out)
    return out
