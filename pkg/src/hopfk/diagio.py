"""JSON formats for groups, homomorphisms, algebras, and diagrams.

The key names are fixed in docs/formats.md.  All scalar entries are the
text form accepted by ``parse_scalar``.  Group elements appear in files
by name; indices are resolved at load time.
"""

from __future__ import annotations

import json

from .groups import (
    GroupHom,
    GroupTable,
    cyclic_group,
    group_from_table,
    mod_hom,
    sign_hom_s3,
    symmetric_group,
    trivial_hom,
    validate_hom,
)
from .heegaard import Crossing, Diagram
from .hopf import (
    HopfPiCoalgebra,
    build_function_hopf,
    build_kac_paljutkin,
    check_shapes,
)
from .scalars import Scalar, ScalarParseError, format_scalar, parse_scalar


class DataFormatError(ValueError):
    """Input file is malformed (missing keys, bad scalars, bad indices)."""


def _parse_scalars(node, where):
    if isinstance(node, list):
        return tuple(_parse_scalars(v, where) for v in node)
    if isinstance(node, str):
        try:
            return parse_scalar(node)
        except ScalarParseError as exc:
            raise DataFormatError(f"bad scalar in {where}: {exc}") from exc
    if isinstance(node, int):
        return Scalar(node)
    raise DataFormatError(f"bad scalar entry in {where}: {node!r}")


def _dump_scalars(node):
    if isinstance(node, tuple):
        return [_dump_scalars(v) for v in node]
    return format_scalar(node)


# -- groups -------------------------------------------------------------------


def parse_group(data) -> GroupTable:
    """Accepts a builtin name ("z4", "s3") or a {"names","mul"} table."""
    if isinstance(data, str):
        return builtin_group(data)
    if not isinstance(data, dict):
        raise DataFormatError("group must be a name or an object")
    try:
        names, mul = data["names"], data["mul"]
    except KeyError as exc:
        raise DataFormatError(f"group object missing key {exc}") from exc
    try:
        return group_from_table(names, mul)
    except ValueError as exc:
        raise DataFormatError(f"invalid group table: {exc}") from exc


def builtin_group(name: str) -> GroupTable:
    key = name.strip().lower()
    for prefix in ("z", "cyclic-"):
        if key.startswith(prefix) and key[len(prefix):].isdigit():
            return cyclic_group(int(key[len(prefix):]))
    for prefix in ("s", "symmetric-"):
        if key.startswith(prefix) and key[len(prefix):].isdigit():
            return symmetric_group(int(key[len(prefix):]))
    raise DataFormatError(f"unknown group name {name!r}")


def element_index(pi: GroupTable, label) -> int:
    if isinstance(label, int):
        if 0 <= label < pi.order:
            return label
        raise DataFormatError(f"group element index {label} out of range")
    if label in pi.names:
        return pi.names.index(label)
    if isinstance(label, str) and label.isdigit() and int(label) < pi.order:
        return int(label)
    raise DataFormatError(f"unknown group element {label!r}")


# -- homomorphisms --------------------------------------------------------------


def builtin_hom(name: str) -> GroupHom:
    key = name.strip().lower()
    if key in ("sign-s3", "sign"):
        return sign_hom_s3()
    if key.startswith("mod") and "-z" in key:
        m_part, n_part = key[3:].split("-z", 1)
        if m_part.isdigit() and n_part.isdigit():
            try:
                return mod_hom(int(n_part), int(m_part))
            except ValueError as exc:
                raise DataFormatError(str(exc)) from exc
    if key.startswith("trivial-"):
        return trivial_hom(builtin_group(key[len("trivial-"):]))
    raise DataFormatError(f"unknown homomorphism name {name!r}")


def parse_hom(data) -> GroupHom:
    if isinstance(data, str):
        return builtin_hom(data)
    try:
        source = parse_group(data["source"])
        target = parse_group(data["target"])
        image = tuple(element_index(target, v) for v in data["image"])
    except (KeyError, TypeError) as exc:
        raise DataFormatError(f"bad homomorphism object: {exc}") from exc
    hom = GroupHom(source, target, image)
    report = validate_hom(hom)
    if not report.passed:
        raise DataFormatError(
            "not a homomorphism: " + "; ".join(report.violations)
        )
    return hom


# -- algebras -------------------------------------------------------------------


def builtin_algebra(name: str) -> HopfPiCoalgebra:
    key = name.strip().lower()
    if key in ("kac-paljutkin", "kp"):
        return build_kac_paljutkin()
    if key.startswith("fun-"):
        return build_function_hopf(builtin_hom(key[len("fun-"):]))
    raise DataFormatError(f"unknown algebra name {name!r}")


def parse_algebra(data) -> HopfPiCoalgebra:
    if isinstance(data, str):
        return builtin_algebra(data)
    try:
        pi = parse_group(data["group"])
        dim = tuple(int(v) for v in data["dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DataFormatError(f"bad algebra object: {exc}") from exc
    if len(dim) != pi.order:
        raise DataFormatError("dim list length differs from group order")

    def per_element(block, what):
        out = {}
        for label, node in block.items():
            out[element_index(pi, label)] = _parse_scalars(node, what)
        missing = set(range(pi.order)) - set(out)
        if missing:
            raise DataFormatError(
                f"{what} missing components {[pi.names[a] for a in sorted(missing)]}"
            )
        return out

    try:
        mul = per_element(data["mul"], "mul")
        unit = per_element(data["unit"], "unit")
        antipode = per_element(data["antipode"], "antipode")
        counit = _parse_scalars(data["counit"], "counit")
        delta = {}
        for key, node in data["delta"].items():
            a_label, b_label = key.split("|", 1)
            pair = (element_index(pi, a_label), element_index(pi, b_label))
            delta[pair] = _parse_scalars(node, f"delta[{key}]")
    except (KeyError, TypeError, AttributeError) as exc:
        raise DataFormatError(f"bad algebra object: {exc}") from exc
    missing = {
        (a, b)
        for a in range(pi.order)
        for b in range(pi.order)
        if (a, b) not in delta
    }
    if missing:
        raise DataFormatError(f"delta missing {len(missing)} component pairs")
    crossing = None
    if "crossing" in data:
        crossing = {}
        for b_label, block in data["crossing"].items():
            b = element_index(pi, b_label)
            crossing[b] = {
                element_index(pi, a_label): _parse_scalars(node, "crossing")
                for a_label, node in block.items()
            }
    H = HopfPiCoalgebra(pi, dim, mul, unit, delta, counit, antipode, crossing)
    try:
        check_shapes(H)
    except ValueError as exc:
        raise DataFormatError(str(exc)) from exc
    return H


def dump_algebra(H: HopfPiCoalgebra) -> dict:
    pi = H.pi
    data = {
        "group": {"names": list(pi.names), "mul": [list(r) for r in pi.mul]},
        "dim": list(H.dim),
        "mul": {pi.names[a]: _dump_scalars(H.mul[a]) for a in range(pi.order)},
        "unit": {pi.names[a]: _dump_scalars(H.unit[a]) for a in range(pi.order)},
        "delta": {
            f"{pi.names[a]}|{pi.names[b]}": _dump_scalars(H.delta[(a, b)])
            for a in range(pi.order)
            for b in range(pi.order)
        },
        "counit": _dump_scalars(H.counit),
        "antipode": {
            pi.names[a]: _dump_scalars(H.antipode[a]) for a in range(pi.order)
        },
    }
    if H.crossing is not None:
        data["crossing"] = {
            pi.names[b]: {
                pi.names[a]: _dump_scalars(H.crossing[b][a])
                for a in range(pi.order)
            }
            for b in range(pi.order)
        }
    return data


# -- diagrams --------------------------------------------------------------------


def parse_diagram(data, pi: GroupTable = None, ignore_colors=False) -> Diagram:
    try:
        genus = int(data["genus"])
        crossings = tuple(
            Crossing(int(c["id"]), int(c["upper"]), int(c["lower"]), int(c["sign"]))
            for c in data["crossings"]
        )
        upper = tuple(tuple(int(i) for i in o) for o in data["upper_orders"])
        lower = tuple(tuple(int(i) for i in o) for o in data["lower_orders"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DataFormatError(f"bad diagram object: {exc}") from exc
    colors = None
    if not ignore_colors and data.get("colors") is not None:
        if pi is None:
            raise DataFormatError(
                "diagram has colors but no group was provided to resolve them"
            )
        colors = tuple(element_index(pi, v) for v in data["colors"])
    return Diagram(genus, crossings, upper, lower, colors, pi if colors else None)


def dump_diagram(D: Diagram) -> dict:
    data = {
        "genus": D.genus,
        "crossings": [
            {"id": c.id, "upper": c.upper, "lower": c.lower, "sign": c.sign}
            for c in D.crossings
        ],
        "upper_orders": [list(o) for o in D.upper_orders],
        "lower_orders": [list(o) for o in D.lower_orders],
    }
    if D.colored:
        data["colors"] = [D.pi.names[a] for a in D.colors]
    return data


def result_record(D: Diagram, Z, K) -> dict:
    return {
        "Z": format_scalar(Z),
        "K": format_scalar(K),
        "genus": D.genus,
        "colors": [D.pi.names[a] for a in D.colors] if D.colored else None,
    }


# -- file helpers -----------------------------------------------------------------


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise DataFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"{path} is not valid JSON: {exc}") from exc


def load_algebra(source: str) -> HopfPiCoalgebra:
    """A builtin algebra name, or a path to an algebra JSON file."""
    try:
        return builtin_algebra(source)
    except DataFormatError:
        pass
    return parse_algebra(load_json(source))


def load_hom(source: str) -> GroupHom:
    try:
        return builtin_hom(source)
    except DataFormatError:
        pass
    return parse_hom(load_json(source))


def load_group(source: str) -> GroupTable:
    try:
        return builtin_group(source)
    except DataFormatError:
        pass
    return parse_group(load_json(source))


def load_diagram(path: str, pi: GroupTable = None, ignore_colors=False) -> Diagram:
    return parse_diagram(load_json(path), pi, ignore_colors)
