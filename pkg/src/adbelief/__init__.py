"""Accept-desirability belief models over finite possibility spaces.

Exact rational arithmetic throughout the classical part; the quantum part
works in floating point with explicit tolerances.
"""

from .belief_change import (AgmReport, Verdict, check_agm, detect_dilation, expand,
                            full_meet, includes, revise, same_model)
from .cones import ConeRep, Gamble, PossibilitySpace, cone_membership, separating_certificate
from .conditioning import (Event, Kernel, call_off, complement, condition,
                           conditional_lower_prevision, conditional_upper_prevision,
                           event_leq, event_meet, is_conditionable, is_regular, kernel)
from .errors import (ADError, EmptyConditioningEvent, InvariantViolation, NonRegularEvent,
                     NotConditionable, ZeroProbabilityEvent)
from .models import (CONTRADICTION, ADAssessment, ADModel, Background, ConditionedModel,
                     ConeModel, accepts, desires, is_consistent, lower_prevision,
                     natural_extension, precise_model, upper_prevision, vacuous_model)
from .previsional import (LayeredPrevision, LPOracle, PrevisionalModel, check_coherence,
                          embed_fcp, fcp_value, previsional_expand_consistent, previsional_revise)
from .propositional import (FilterCore, embed_filter, extract_filter, filter_closure,
                            prop_expand, prop_revise)
from .quantum import (QuantumEvent, luders, q_call_off, q_conditional_prevision,
                      q_event_leq, q_event_meet, q_is_regular)

__version__ = "0.1.0"
