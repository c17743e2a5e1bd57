"""
Text templates for the Hurwitz realizability toolkit
"""

from typing import Iterable, List, Optional, Sequence

from .branch_data import BranchDatum, CompatibilityReport
from .checkerboard import MinimalGraph, build_surface_data
from .classifier import Classification
from .dessins import BLACK, WHITE, Dessin, face_lengths
from .diagrams import Construction
from .oracle import Constellation, Decision
from .permutations import cycle_notation
from .reports import SweepReport


class Messages:

    @staticmethod
    def compatibility_report(report: CompatibilityReport) -> str:
        """Per-condition compatibility table"""
        status = "✅ compatible" if report.compatible else "❌ not compatible"
        lines = [f"{report.datum}: {status}"]
        for c in report.conditions:
            mark = "✅" if c.passed else "❌"
            lines.append(f"  {mark} condition {c.number}: {c.detail}")
        return "\n".join(lines)

    @staticmethod
    def constellation(witness: Constellation) -> str:
        lines = [f"witness of degree {witness.degree}, genus {witness.genus()}:"]
        for i, p in enumerate(witness.perms, start=1):
            lines.append(f"  σ{i} = {cycle_notation(p, offset=1)}")
        return "\n".join(lines)

    @staticmethod
    def decision(datum: BranchDatum, decision: Decision) -> str:
        message = f"{datum}: {decision.status.value}"
        if decision.reason:
            message += f" ({decision.reason}, {decision.nodes} nodes)"
        if decision.witness:
            message += "\n" + Messages.constellation(decision.witness)
        return message

    @staticmethod
    def classification(datum: BranchDatum, classification: Classification) -> str:
        return f"{datum}: {classification}"

    @staticmethod
    def sweep_table(report: SweepReport, path: Optional[str] = None, timings: bool = False) -> str:
        """Fixed-width table of sweep rows followed by the summary"""
        header = f"{'datum':<44} {'classifier':<14} {'rule':<9} {'oracle':<13} agree"
        if timings:
            header += "   seconds"
        lines = [header, "-" * len(header)]
        for row in report.rows:
            agrees = {True: "yes", False: "NO", None: "-"}[row.agrees]
            lines.append(
                f"{str(row.datum):<44} {row.classifier:<14} {row.rule or '-':<9} "
                f"{row.oracle:<13} " + (f"{agrees:<5} {row.seconds:>9.3f}" if timings else agrees)
            )
        lines.append("")
        lines.append(
            f"📊 {len(report.rows)} data, {len(report.exceptional())} exceptional, "
            f"{len(report.disagreements)} disagreements, {len(report.undecided)} undecided"
        )
        for key, count in report.exceptional_by_degree().items():
            if count:
                lines.append(f"  {key}: {count} exceptional")
        if path:
            lines.append(f"📁 report written to {path}")
        return "\n".join(lines)

    @staticmethod
    def graph_table(graphs: Sequence[MinimalGraph]) -> str:
        """Minimal graphs with f in cycle notation"""
        if not graphs:
            return "no minimal graphs"
        lines = [f"{'p':>3} {'q':>3} {'genus':>5}  f"]
        for graph in graphs:
            lines.append(f"{graph.p:>3} {graph.q:>3} {graph.genus:>5}  {cycle_notation(graph.f)}")
        return "\n".join(lines)

    @staticmethod
    def surface_data(graph: MinimalGraph) -> str:
        surface = build_surface_data(graph)
        return (
            f"{graph}: {len(surface.vertices)} vertices, {len(surface.edges)} edges, 2 discs, "
            f"χ = {surface.euler_characteristic}"
        )

    @staticmethod
    def dessin_summary(dessin: Dessin) -> str:
        return (
            f"dessin with {dessin.edge_count} edges: black {dessin.valences(BLACK)}, "
            f"white {dessin.valences(WHITE)}, faces {face_lengths(dessin)}"
        )

    @staticmethod
    def dessin_list(dessins: Iterable[Dessin]) -> str:
        lines: List[str] = [Messages.dessin_summary(d) for d in dessins]
        return "\n".join(lines) if lines else "no dessins"

    @staticmethod
    def construction(construction: Construction) -> str:
        base = construction.base + (" (mirrored)" if construction.mirrored else "")
        lines = [f"🧩 base {base}, {len(construction.moves)} moves"]
        for move in construction.moves:
            arcs = ", ".join(str(a) for a in move.arcs)
            lines.append(f"  {move.kind.value} at arcs {arcs}")
        diag = construction.diagram
        lines.append(f"diagram: {diag.datum()} with {len(diag.chords)} chords")
        for a, b, side in diag.chords:
            lines.append(f"  {a:>3} - {b:<3} {side}")
        return "\n".join(lines)

    @staticmethod
    def witness_check(datum: BranchDatum, ok: bool) -> str:
        return f"✅ witness realizes {datum}" if ok else f"❌ witness does not realize {datum}"
