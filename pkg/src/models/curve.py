"""Dual-graph models of weighted pointed nodal curves."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Optional

import networkx as nx

from src.models.rational import RationalFormatError, format_rational, parse_rational


class InvalidCurveError(Exception):
    """Exception raised when curve data violates the dual-graph invariants."""

    pass


@dataclass(frozen=True)
class Component:
    """An irreducible component with its geometric genus."""

    id: str
    genus: int


@dataclass(frozen=True)
class MarkedPoint:
    """A weighted marked point; points sharing a group coincide."""

    on: str
    label: str
    weight: Fraction
    group: Optional[str] = None


@dataclass(frozen=True)
class Subcurve:
    """A nonempty, not necessarily connected, union of components."""

    members: frozenset[str]

    @classmethod
    def of(cls, *ids: str) -> "Subcurve":
        return cls(frozenset(ids))

    def __contains__(self, component_id: str) -> bool:
        return component_id in self.members

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class NodalCurve:
    """Weighted pointed nodal curve given by its dual graph.

    Nodes are unordered pairs of component ids; a pair (i, i) is a node of
    the component i with itself. Marked points are smooth points.
    """

    components: tuple[Component, ...]
    nodes: tuple[tuple[str, str], ...] = ()
    points: tuple[MarkedPoint, ...] = ()

    def __post_init__(self) -> None:
        if not self.components:
            raise InvalidCurveError("A curve needs at least one component")

        ids = [component.id for component in self.components]
        if len(set(ids)) != len(ids):
            raise InvalidCurveError(f"Duplicate component ids: {ids}")
        for component in self.components:
            if component.genus < 0:
                raise InvalidCurveError(
                    f"Negative genus on component {component.id}: {component.genus}"
                )

        known = set(ids)
        for left, right in self.nodes:
            if left not in known or right not in known:
                raise InvalidCurveError(f"Node ({left}, {right}) names an unknown id")

        group_totals: dict[str, Fraction] = {}
        group_components: dict[str, str] = {}
        for point in self.points:
            if point.on not in known:
                raise InvalidCurveError(
                    f"Marked point {point.label} lies on unknown component {point.on}"
                )
            if not 0 < point.weight <= 1:
                raise InvalidCurveError(
                    f"Weight of {point.label} must lie in (0,1], got {point.weight}"
                )
            if point.group is not None:
                group_totals[point.group] = (
                    group_totals.get(point.group, Fraction(0)) + point.weight
                )
                previous = group_components.setdefault(point.group, point.on)
                if previous != point.on:
                    raise InvalidCurveError(
                        f"Coincident points of group {point.group} lie on "
                        f"different components"
                    )
        for group, total in group_totals.items():
            if total > 1:
                raise InvalidCurveError(
                    f"Total weight {total} at coincident point {group} exceeds 1"
                )

        if not nx.is_connected(self.graph):
            raise InvalidCurveError("The dual graph is not connected")

    @cached_property
    def graph(self) -> nx.MultiGraph:
        """Dual graph: one vertex per component, one edge per node."""
        graph = nx.MultiGraph()
        graph.add_nodes_from(component.id for component in self.components)
        graph.add_edges_from(self.nodes)
        return graph

    @property
    def component_ids(self) -> list[str]:
        return [component.id for component in self.components]

    def genus_of(self, component_id: str) -> int:
        for component in self.components:
            if component.id == component_id:
                return component.genus
        raise KeyError(component_id)

    def node_count(self, left: str, right: str) -> int:
        """Number of nodes joining two components (self-nodes when equal)."""
        return self.graph.number_of_edges(left, right)

    def points_on(self, members: Iterable[str]) -> Iterator[MarkedPoint]:
        chosen = set(members)
        return (point for point in self.points if point.on in chosen)

    @property
    def total_weight(self) -> Fraction:
        return sum((point.weight for point in self.points), Fraction(0))

    def order_key(self, subcurve: Subcurve) -> tuple[int, ...]:
        """Deterministic sort key: component positions in declaration order."""
        positions = {cid: index for index, cid in enumerate(self.component_ids)}
        return tuple(sorted(positions[cid] for cid in subcurve.members))

    def sorted_members(self, subcurve: Subcurve) -> list[str]:
        ids = self.component_ids
        return [ids[index] for index in self.order_key(subcurve)]

    @classmethod
    def from_json(cls, data: dict) -> "NodalCurve":
        """Create a curve from "curve/v1" JSON data; zero weights are dropped."""
        try:
            components = tuple(
                Component(id=str(item["id"]), genus=int(item["genus"]))
                for item in data["components"]
            )
            nodes = []
            for pair in data.get("nodes", []):
                if len(pair) != 2:
                    raise InvalidCurveError(f"A node joins exactly two ids: {pair}")
                nodes.append((str(pair[0]), str(pair[1])))
            points = []
            for index, item in enumerate(data.get("points", [])):
                if not isinstance(item["on"], (str, int)):
                    raise InvalidCurveError(
                        f"Marked point {item.get('label', index)} must be a smooth "
                        f"point of one component, not a node"
                    )
                weight = parse_rational(item["weight"])
                if weight == 0:
                    continue
                group = item.get("group")
                points.append(
                    MarkedPoint(
                        on=str(item["on"]),
                        label=str(item.get("label", f"x{index + 1}")),
                        weight=weight,
                        group=None if group is None else str(group),
                    )
                )
        except (KeyError, TypeError, ValueError, RationalFormatError) as e:
            raise InvalidCurveError(f"Malformed curve data: {e}")
        return cls(components=components, nodes=tuple(nodes), points=tuple(points))

    def to_json(self) -> dict:
        points = []
        for point in self.points:
            item = {
                "on": point.on,
                "label": point.label,
                "weight": format_rational(point.weight),
            }
            if point.group is not None:
                item["group"] = point.group
            points.append(item)
        return {
            "components": [
                {"id": component.id, "genus": component.genus}
                for component in self.components
            ],
            "nodes": [[left, right] for left, right in self.nodes],
            "points": points,
        }


@dataclass(frozen=True)
class Multidegree:
    """Per-component degree of a line bundle, kept exact."""

    degrees: dict[str, Fraction] = field(default_factory=dict)

    def __getitem__(self, component_id: str) -> Fraction:
        return self.degrees[component_id]

    def __add__(self, other: "Multidegree") -> "Multidegree":
        if set(self.degrees) != set(other.degrees):
            raise InvalidCurveError("Multidegrees live on different component sets")
        return Multidegree({cid: self[cid] + other[cid] for cid in self.degrees})

    def scaled(self, factor: Fraction) -> "Multidegree":
        return Multidegree({cid: factor * value for cid, value in self.degrees.items()})

    @property
    def total(self) -> Fraction:
        return sum(self.degrees.values(), Fraction(0))

    def on(self, subcurve: Subcurve) -> Fraction:
        return sum((self[cid] for cid in subcurve.members), Fraction(0))

    @property
    def is_integral(self) -> bool:
        return all(value.denominator == 1 for value in self.degrees.values())

    def as_list(self, curve: NodalCurve) -> list[Fraction]:
        return [self[cid] for cid in curve.component_ids]

    @classmethod
    def from_list(cls, curve: NodalCurve, values: list) -> "Multidegree":
        if len(values) != len(curve.components):
            raise InvalidCurveError(
                f"Expected {len(curve.components)} degrees, got {len(values)}"
            )
        return cls(
            {
                cid: parse_rational(value)
                for cid, value in zip(curve.component_ids, values)
            }
        )

    def to_json(self, curve: NodalCurve) -> dict:
        return {cid: format_rational(self[cid]) for cid in curve.component_ids}
