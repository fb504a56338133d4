"""Two models where conditioning-based revision breaks an AGM postulate.

Run with ``python demos/counterexamples.py``.
"""

from adbelief import Event, check_agm, detect_dilation, event_meet, expand, revise
from adbelief.showcase import br4_model, br8_model


def show_br4():
    M, E, h = br4_model()
    print("model generated by", h)
    print("  lower probability of E = {1,2}:", M.lower_prevision(E.indicator()))
    print("  expansion accepts h:", expand(M, E).accepts(h))
    print("  revision accepts h: ", revise(M, E).accepts(h))
    print("  dilation on E and its complement:", detect_dilation(M, E, h))
    v = check_agm(M, E, Event.full(M.space))["BR4"]
    print("  BR4:", v.status, "witness", v.witness)


def show_br8():
    M, E1, E2, g = br8_model()
    S = M.space
    X = expand(revise(M, E1), E2)
    R = revise(M, event_meet(E1, E2))
    w = S.gamble([-1, 0, 1, 0])
    print("model generated by", g)
    print("  revise by {1,2,3} then expand by {1,3} accepts", w, ":", X.accepts(w))
    print("  revise by {1,3} directly accepts", w, ":", R.accepts(w))
    v = check_agm(M, E1, E2)["BR8"]
    print("  BR8:", v.status, "witness", v.witness)


if __name__ == "__main__":
    show_br4()
    print()
    show_br8()
