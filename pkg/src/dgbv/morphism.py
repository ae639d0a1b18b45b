"""Structure-preserving maps, quasi-isomorphisms, potential comparison.

A morphism is a degree-0 linear map between instances that respects the
product, unit, both differentials and the integrals.  A quasi-isomorphism
additionally induces isomorphisms on the cohomology of the differential
and of the BV operator; the induced matrix on delta-cohomology is the
canonical linear identification of the two class bases, and comparing
potentials means transporting coordinates along it and subtracting.
Chains of quasi-isomorphisms in alternating directions compose their
transports link by link.
"""

from fractions import Fraction

from . import linalg
from .frobenius import potential
from .graded import LinearOperator
from .homology import cohomology, decomposition, metric_eta
from .mc import solve_mc, Obstruction
from .reports import Report


class DGBVMorphism:
    """Degree-0 map f: source -> target stored as a LinearOperator."""

    def __init__(self, source, target, operator, name="f"):
        if operator.degree != 0:
            raise ValueError("morphisms must have degree 0")
        if operator.source != source.space or operator.target != target.space:
            raise ValueError("operator spaces do not match the instances")
        self.source = source
        self.target = target
        self.operator = operator
        self.name = name

    @classmethod
    def from_entries(cls, source, target, entries, name="f"):
        op = LinearOperator.from_entries(source.space, target.space, 0,
                                         entries)
        return cls(source, target, op, name)

    @classmethod
    def identity(cls, instance):
        return cls(instance, instance,
                   LinearOperator.identity(instance.space), name="id")

    def __call__(self, v):
        return self.operator(v)

    def __repr__(self):
        return f"DGBVMorphism({self.source.name} -> {self.target.name})"


def check_morphism(m):
    """Exhaustive verification of the morphism axioms with witnesses."""
    A, B, f = m.source, m.target, m.operator
    report = Report(f"morphism [{m.name}: {A.name} -> {B.name}]")
    space = A.space
    n = space.dim

    fails = []
    for i in range(n):
        for j in range(n):
            ei = space.basis_element(space.label_of(i))
            ej = space.basis_element(space.label_of(j))
            lhs = f(A.multiply(ei, ej))
            rhs = B.multiply(f(ei), f(ej))
            if lhs != rhs:
                fails.append((space.label_of(i), space.label_of(j)))
    report.add("multiplicative", fails)

    if A.unit is not None and B.unit is not None:
        ok = f(A.unit_element()) == B.unit_element()
        report.add("unit_preserved", [] if ok else [(A.unit,)])
    else:
        report.add("unit_preserved", [], applicable=False,
                   detail="a unit is missing")

    report.add("delta_equivariant",
               [] if f.compose(A.delta) == B.delta.compose(f) else [("delta",)])
    report.add("bv_equivariant",
               [] if f.compose(A.bv) == B.bv.compose(f) else [("bv",)])

    if A.integral is not None and B.integral is not None:
        fails = []
        for i in range(n):
            e = space.basis_element(space.label_of(i))
            lhs = B.integrate(f(e))
            rhs = A.integrate(e)
            if lhs != rhs:
                fails.append((space.label_of(i), str(lhs), str(rhs)))
        report.add("integral_compatible", fails)
    else:
        report.add("integral_compatible", [], applicable=False,
                   detail="an integral is missing")
    return report


def induced_on_cohomology(m, which="delta"):
    """Matrix of H(f): columns are classes of images of source representatives.

    Returns (matrix, H_source, H_target); matrix[b][a] is the coefficient
    of target class b in the class of f(source rep a).
    """
    H1 = cohomology(m.source, which)
    H2 = cohomology(m.target, which)
    cols = []
    for r in H1.reps:
        img = m(r)
        cols.append(H2.class_coordinates(img))
    matrix = [[cols[a][b] for a in range(H1.rank)] for b in range(H2.rank)]
    return matrix, H1, H2


def check_quasi_iso(m):
    """Morphism check plus induced isomorphisms on both cohomologies.

    The report carries ``induced_matrix`` (on delta-cohomology) when the
    morphism side passes.
    """
    report = Report(f"quasi-isomorphism [{m.name}]")
    base = check_morphism(m)
    report.checks.extend(base.checks)
    report.induced_matrix = None
    if not base.ok:
        report.add("induced_delta_iso", [("morphism axioms fail",)])
        return report
    for which in ("delta", "bv"):
        matrix, H1, H2 = induced_on_cohomology(m, which)
        fails = []
        if H1.rank != H2.rank:
            fails.append((f"rank {H1.rank} vs {H2.rank}",))
        else:
            for k in sorted(set(H1.betti) | set(H2.betti)):
                if H1.betti.get(k, 0) != H2.betti.get(k, 0):
                    fails.append((f"betti mismatch at degree {k}",))
            if not fails and H1.rank and linalg.invert(
                    [list(r) for r in matrix]) is None:
                fails.append(("induced matrix singular",))
        report.add(f"induced_{which}_iso", fails,
                   detail=f"ranks {H1.rank} -> {H2.rank}")
        if which == "delta" and not fails:
            report.induced_matrix = matrix
    return report


def run_pipeline(A, order):
    """decomposition -> solve -> potential, at consistent orders."""
    D = decomposition(A)
    S = solve_mc(A, D, order)
    if isinstance(S, Obstruction):
        raise ArithmeticError(f"unexpected obstruction at order {S.order}")
    P = potential(A, S, order + 2)
    return D, S, P


def compare_potentials(m, order):
    """Potential of the source minus the transported potential of the target.

    Coordinates are transported along the induced isomorphism on
    delta-cohomology; zero residual identifies the two structures through
    the stated order (the potentials are compared at order ``order + 2``,
    matching solutions of order ``order``).
    """
    qreport = check_quasi_iso(m)
    if not qreport.ok:
        raise ValueError("not a verified quasi-isomorphism:\n"
                         + qreport.summary())
    matrix = qreport.induced_matrix
    _, _, P1 = run_pipeline(m.source, order)
    _, _, P2 = run_pipeline(m.target, order)
    transported = P2.poly.substitute(matrix, P1.ring)
    residual = P1.poly - transported
    report = Report(f"potential comparison [{m.name}]")
    report.add("identified", [(P1.ring.mono_str(mo), str(c))
                              for mo, c in residual.terms_sorted()],
               detail=f"through order {min(P1.order, P2.order)}")
    report.residual = residual
    return report


def transported_metric_residual(m):
    """eta_1 - f^T eta_2 f over the induced identification, as a matrix."""
    matrix, H1, H2 = induced_on_cohomology(m, "delta")
    eta1 = metric_eta(m.source, H1)
    eta2 = metric_eta(m.target, H2)
    h = H1.rank
    out = []
    for a in range(h):
        row = []
        for b in range(h):
            val = Fraction(0)
            for p in range(h):
                if not matrix[p][a]:
                    continue
                for q in range(h):
                    if matrix[q][b]:
                        val += matrix[p][a] * eta2.matrix[p][q] * matrix[q][b]
            row.append(eta1.matrix[a][b] - val)
        out.append(row)
    return out


class ZigZag:
    """Chain of verified quasi-isomorphisms with alternating directions.

    ``links`` is a list of (morphism, direction) with direction "fwd" for
    a map leaving the current end and "bwd" for one arriving at it.
    """

    def __init__(self, links):
        self.links = list(links)
        if not self.links:
            raise ValueError("empty chain")
        current = self.endpoints()[0]
        for f, direction in self.links:
            if direction == "fwd":
                if f.source is not current and f.source.name != current.name:
                    raise ValueError("chain endpoints do not match")
                current = f.target
            elif direction == "bwd":
                if f.target is not current and f.target.name != current.name:
                    raise ValueError("chain endpoints do not match")
                current = f.source
            else:
                raise ValueError("direction must be 'fwd' or 'bwd'")

    def endpoints(self):
        f0, d0 = self.links[0]
        start = f0.source if d0 == "fwd" else f0.target
        f1, d1 = self.links[-1]
        end = f1.target if d1 == "fwd" else f1.source
        return start, end

    def verify(self):
        reports = [check_quasi_iso(f) for f, _ in self.links]
        ok = all(r.ok for r in reports)
        return ok, reports

    def net_transport(self):
        """Composite coordinate transport from the start to the end classes."""
        ok, reports = self.verify()
        if not ok:
            raise ValueError("a link is not a quasi-isomorphism")
        net = None
        for (f, direction), rep in zip(self.links, reports):
            mat = rep.induced_matrix
            if direction == "bwd":
                mat = linalg.invert([list(r) for r in mat])
            net = mat if net is None else linalg.mat_mul(
                [list(r) for r in mat], [list(r) for r in net])
        return net

    def compare_potentials(self, order):
        start, end = self.endpoints()
        net = self.net_transport()
        _, _, P1 = run_pipeline(start, order)
        _, _, P2 = run_pipeline(end, order)
        transported = P2.poly.substitute(net, P1.ring)
        residual = P1.poly - transported
        report = Report("zig-zag potential comparison")
        report.add("identified", [(P1.ring.mono_str(mo), str(c))
                                  for mo, c in residual.terms_sorted()])
        report.residual = residual
        return report


def cohomology_instance(A):
    """The cohomology of an instance as an instance with zero differentials.

    Classes keep the degree of their representatives; the product is the
    cup product, the integral evaluates representatives.  Useful as the
    target of a formality comparison when the user supplies the morphism.
    """
    from .models import instance_from_tables
    H = cohomology(A, "delta")
    basis = [(f"h{a}", H.degrees[a]) for a in range(H.rank)]
    mult = []
    for a in range(H.rank):
        for b in range(H.rank):
            prod = A.multiply(H.reps[a], H.reps[b])
            coords = H.class_coordinates(prod)
            for c, x in enumerate(coords):
                if x:
                    mult.append((f"h{a}", f"h{b}", f"h{c}", x))
    integral = None
    if A.integral is not None:
        integral = [(f"h{a}", A.integrate(H.reps[a])) for a in range(H.rank)]
    unit = "h0" if H.unit_index == 0 else None
    return instance_from_tables(basis, mult, [], [], integral, unit=unit,
                                name=f"H({A.name})")
