#!/usr/bin/env python3
"""Run EX1/EX2 through every checker and construction and print the results."""

from qsjacobi.constructions import schoutenise, theorem1_associate, theorem1_proof_identities
from qsjacobi.cotangent import canonical_poisson
from qsjacobi.fileformat import print_expression, print_vector_field
from qsjacobi.fixtures import ex1, ex2
from qsjacobi.structures import check_exact_qs, check_odd_jacobi, check_schouten


def show(title, rep):
    status = "PASS" if rep.passed else "FAIL"
    print(f"  {title}: {status}")
    for e in rep.failures():
        print(f"    {e.name}: {print_expression(e.residual)}")


def main():
    for name, ex in (("EX1", ex1()), ("EX2", ex2())):
        print(f"{name}")
        print(f"  S_hat = {print_expression(ex.qs.S_hat)}")
        print(f"  Q     = {print_vector_field(ex.qs.Q)}")
        print(f"  E     = {print_vector_field(ex.E)}")
        show("exact QS", check_exact_qs(ex))
        oj = theorem1_associate(ex)
        print(f"  associated S = {print_expression(oj.S)}")
        print(f"  {{S,S}}        = {print_expression(canonical_poisson(oj.S, oj.S))}")
        show("odd Jacobi", check_odd_jacobi(oj))
        show("proof identities", theorem1_proof_identities(ex))
        sc = schoutenise(oj)
        print(f"  schoutenised = {print_expression(sc.S_hat)}")
        show("Schouten on M x R", check_schouten(sc))


if __name__ == "__main__":
    main()
