"""
Graphviz DOT and line-oriented text formatting.
"""

from typing import Iterable, List, Sequence

import pydotplus
from pydotplus.graphviz import Edge, Node, quote_if_necessary

from ..models import CheckReport


def format_hasse_dot(name: str, nodes: Sequence[str], arrows: Iterable[tuple]) -> str:
    """
    Format a Hasse diagram as a Graphviz digraph.

    Args:
        name: Graph name
        nodes: Node names in canonical order, one per lattice element
        arrows: (upper, lower, label) triples, upper and lower indexing nodes

    Returns:
        DOT source ending in a newline
    """
    names = [quote_if_necessary(node) for node in nodes]
    graph = pydotplus.Dot(graph_name=quote_if_necessary(name), graph_type="digraph")
    graph.set_rankdir("TB")
    for node, label in zip(names, nodes):
        graph.add_node(Node(node, label=quote_if_necessary(label)))
    for upper, lower, label in arrows:
        graph.add_edge(Edge(names[upper], names[lower], label=quote_if_necessary(label)))
    return graph.to_string().rstrip("\n") + "\n"


def format_report(report: CheckReport) -> List[str]:
    """
    Format a check report as text lines.

    Args:
        report: Report to format

    Returns:
        A PASS/FAIL header line, then one line per violation and note
    """
    lines = [f"{'PASS' if report.passed else 'FAIL'} {report.name}"]
    for violation in report.violations:
        lines.append(f"  {violation.rule} at {violation.location}: {violation.detail}")
    for note in report.notes:
        lines.append(f"  note: {note}")
    return lines


def format_table(headers: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    """Tab-separated table with a header row."""
    lines = ["\t".join(headers)]
    lines += ["\t".join(str(cell) for cell in row) for row in rows]
    return "\n".join(lines) + "\n"


def yes_no(flag: bool) -> str:
    return "yes" if flag else "no"
