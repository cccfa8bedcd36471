"""Shared record of acceptance-criterion outcomes for the terminal summary."""

CRITERIA = {
    1: "parachute Symanzik polynomials",
    2: "2-site chain polytope and wavefunction",
    3: "Weyl example: staircase, rank, connection matrices",
    4: "Grassmannian example",
    5: "canonical-form conventions (simplex, interval)",
    6: "property suites",
    7: "frozen regression values and suite runtime",
}

# criterion -> list of (test id, status)
OUTCOMES: dict[int, list] = {}
