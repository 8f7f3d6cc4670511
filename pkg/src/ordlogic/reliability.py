"""Reliability-weighted aggregation of numeric readings from several agents.

Each agent has a reliability in [0, 1].  A round collects one reading per
agent, computes a (possibly weighted) mean, measures every agent's distance
from it and updates the reliabilities.  Also here: channel reliabilities,
history-tagged broadcasting with cycle detection, and opinions that agents
send about each other.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

HALF = Fraction(1, 2)


class ReliabilityError(ValueError):
    pass


class NoReadings(ReliabilityError):
    pass


class UnknownAgent(ReliabilityError):
    pass


class ZeroCombined(ReliabilityError):
    pass


def as_fraction(x) -> Fraction:
    """Exact rational from an int, Fraction, decimal string or float literal."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def clamp(x, lo=Fraction(0), hi=Fraction(1)):
    return max(lo, min(hi, x))


def render(q: Fraction) -> str:
    """``p/q (0.xxxx)`` style rendering of a rational."""
    q = Fraction(q)
    exact = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    return f"{exact} ({float(q):.4f})"


@dataclass
class AggregatorState:
    """Reliabilities per agent, channel reliabilities, and the running mean."""

    rho: dict
    channels: dict = field(default_factory=dict)
    m: Fraction | None = None
    t: Fraction = Fraction(0)
    rounds: list = field(default_factory=list)

    @classmethod
    def fresh(cls, agents, initial=HALF, channels=None):
        return cls({a: as_fraction(initial) for a in agents}, {k: as_fraction(v) for k, v in (channels or {}).items()})

    def check(self, agent):
        if agent not in self.rho:
            raise UnknownAgent(f"unknown agent {agent!r}")


@dataclass
class RoundConfig:
    """Options for one round.

    ``variants`` is a subset of {1, 2, 3, 4}: 2 weights readings by
    reliability, 3 folds in the previous mean with its inertia, 4 flags
    agents whose relative deviation is too large for their reliability.
    ``policy`` is ``example``, ``proportional`` or ``none``.
    """

    variants: frozenset = frozenset({1})
    policy: str = "example"
    weights: str = "rho"
    lam: Fraction = Fraction(1, 4)
    threshold: Fraction | None = None
    use_channels: bool = False
    epsilon_aware: bool = True


@dataclass
class RoundResult:
    m: Fraction
    deltas: dict
    delta: Fraction
    weights: dict
    rho_before: dict
    rho: dict
    t: Fraction
    flagged: tuple = ()
    skipped: tuple = ()


def _replicate(values):
    """Smallest integer counts in the same ratios as ``values``."""
    vals = [v for v in values.values() if v]
    if not vals:
        return {k: 0 for k in values}
    lcm = 1
    for v in vals:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    ints = {k: int(v * lcm) for k, v in values.items()}
    g = 0
    for v in ints.values():
        g = math.gcd(g, v)
    return {k: Fraction(v // g) for k, v in ints.items()}


def _policy(name, rho, delta, delta_i, lam):
    if name == "example":
        return Fraction(2, 3) if delta_i <= delta else Fraction(1, 3)
    if name == "proportional":
        return clamp(rho + lam * (delta - delta_i) / (delta + 1))
    if name == "none":
        return rho
    raise ReliabilityError(f"unknown policy {name!r}")


def relative_deviation(delta_i, m):
    """delta_i / |m|, with 0/0 read as 0 and x/0 as infinite."""
    if m == 0:
        return Fraction(0) if delta_i == 0 else math.inf
    return delta_i / abs(m)


def run_round(state: AggregatorState, readings, config: RoundConfig | None = None, epsilons=None) -> RoundResult:
    """Process one round of readings and update ``state`` in place."""
    config = config or RoundConfig()
    if not readings:
        raise NoReadings("a round needs at least one reading")
    readings = {a: as_fraction(r) for a, r in readings.items()}
    epsilons = {a: as_fraction(e) for a, e in (epsilons or {}).items()}
    for a in list(readings) + list(epsilons):
        state.check(a)
    variants = frozenset(config.variants)
    if 2 in variants:
        base = {}
        for a in readings:
            w = state.rho[a]
            if config.use_channels and a in state.channels:
                w = channel_combine(w, state.channels[a])
            if config.epsilon_aware and a in epsilons:
                w *= epsilons[a]
            base[a] = w
        weights = _replicate(base) if config.weights == "replicate" else base
        if sum(weights.values()) == 0:
            weights = {a: Fraction(1) for a in readings}
    else:
        weights = {a: Fraction(1) for a in readings}
    total = sum(weights.values())
    weighted = sum(weights[a] * r for a, r in readings.items())
    if 3 in variants and state.m is not None:
        m = (state.t * state.m + weighted) / (state.t + total)
    else:
        m = weighted / total
    deltas = {a: abs(r - m) for a, r in readings.items()}
    delta = sum(deltas.values()) / len(deltas)
    before = dict(state.rho)
    flagged, skipped = [], []
    for a in readings:
        rho = state.rho[a]
        rel = relative_deviation(deltas[a], m)
        if 4 in variants and rel > 1 - rho:
            flagged.append(a)
        if config.threshold is not None and abs(deltas[a] - delta) < config.threshold:
            continue
        new = _policy(config.policy, rho, delta, deltas[a], config.lam)
        if new < rho:
            if 4 in variants and a not in flagged:
                skipped.append(a)
                continue
            if config.epsilon_aware and a in epsilons and rel <= 1 - epsilons[a]:
                skipped.append(a)
                continue
        state.rho[a] = clamp(new)
    state.t += total
    state.m = m
    result = RoundResult(m, deltas, delta, weights, before, dict(state.rho), state.t, tuple(flagged), tuple(skipped))
    state.rounds.append(result)
    return result


# ---------------------------------------------------------------------------
# channels


def channel_combine(rho, rho_c) -> Fraction:
    """Serial combination: the product, never above either part."""
    rho, rho_c = as_fraction(rho), as_fraction(rho_c)
    for v in (rho, rho_c):
        if not 0 <= v <= 1:
            raise ReliabilityError(f"reliability {v} outside [0, 1]")
    out = rho * rho_c
    assert out <= min(rho, rho_c)
    return out


def _exact_sqrt(q: Fraction):
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


@dataclass
class Breakdown:
    rho: Fraction
    rho_c: Fraction
    exact: bool
    remainder: Fraction


def channel_breakdown(rho, rho_c, target, max_denominator=10**6) -> Breakdown:
    """Split a new combined value back into agent and channel parts.

    Both parts are multiplied by sqrt(target / old).  When that root is not
    rational it is approximated (``exact`` is then False).  Parts are
    clamped to [0, 1]; ``remainder`` is what the recombined value misses.
    """
    rho, rho_c, target = as_fraction(rho), as_fraction(rho_c), as_fraction(target)
    old = channel_combine(rho, rho_c)
    if old == 0:
        raise ZeroCombined("cannot rescale a combined reliability of 0")
    if not 0 <= target <= 1:
        raise ReliabilityError(f"target {target} outside [0, 1]")
    ratio = target / old
    factor = _exact_sqrt(ratio)
    exact = factor is not None
    if factor is None:
        factor = Fraction(math.sqrt(ratio)).limit_denominator(max_denominator)
    a, b = clamp(rho * factor), clamp(rho_c * factor)
    return Breakdown(a, b, exact, target - a * b)


# ---------------------------------------------------------------------------
# broadcasting


@dataclass(frozen=True)
class Message:
    """A message with its history of (agent, value) hops, origin first."""

    history: tuple

    def __post_init__(self):
        if not self.history:
            raise ReliabilityError("a message needs a nonempty history")

    @property
    def origin(self):
        return self.history[0][0]

    @property
    def agents(self):
        return [a for a, _ in self.history]


@dataclass
class StepResult:
    kind: str
    message: Message
    receiver: str
    origin: str | None = None


def broadcast_step(network, message: Message, receiver, value=None) -> StepResult:
    """Deliver ``message`` to ``receiver``.

    If the receiver already appears in the history the message has come
    back around: report the cycle and stop.  Otherwise append the hop.
    """
    for a in message.agents + [receiver]:
        if a not in network:
            raise UnknownAgent(f"unknown agent {a!r}")
    if receiver in message.agents:
        return StepResult("cycle_detected", message, receiver, message.origin)
    hop = message.history[-1][1] if value is None else value
    return StepResult("forwarded", Message(message.history + ((receiver, hop),)), receiver)


@dataclass
class Monitor:
    """Listens to all deliveries and records detected cycles."""

    cycles: list = field(default_factory=list)
    events: list = field(default_factory=list)

    def observe(self, step: StepResult):
        self.events.append(step)
        if step.kind == "cycle_detected":
            self.cycles.append(tuple(step.message.agents))

    def proposals(self, state: AggregatorState | None = None):
        """Suggest merging each cycling group into one agent with mean reliability."""
        seen, out = set(), []
        for cyc in self.cycles:
            group = tuple(sorted(set(cyc)))
            if len(group) < 2 or group in seen:
                continue
            seen.add(group)
            rho = None
            if state is not None:
                rho = sum(state.rho[a] for a in group) / len(group)
            out.append({"group": group, "rho": rho})
        return out


def simulate_broadcast(network, origin, value, suppress_seen=False, monitor=None, max_steps=100000):
    """Flood a message from ``origin`` in FIFO order.

    With ``suppress_seen`` an agent does not send to agents already in the
    history (those deliveries are logged as ``suppressed``).  Returns the
    monitor, which holds every delivery event.
    """
    monitor = monitor or Monitor()
    if origin not in network:
        raise UnknownAgent(f"unknown agent {origin!r}")
    first = Message(((origin, value),))
    queue = deque((first, nb) for nb in network[origin])
    steps = 0
    while queue:
        steps += 1
        if steps > max_steps:
            raise RuntimeError("broadcast did not terminate")
        msg, receiver = queue.popleft()
        step = broadcast_step(network, msg, receiver)
        monitor.observe(step)
        if step.kind != "forwarded":
            continue
        for nb in network[receiver]:
            if suppress_seen and nb in step.message.agents:
                monitor.observe(StepResult("suppressed", step.message, nb))
                continue
            queue.append((step.message, nb))
    return monitor


# ---------------------------------------------------------------------------
# opinions about other agents


PRAISE, ATTACK = "praise", "attack"


@dataclass
class OpinionBook:
    """History of opinions, used to spot mutual praise or mutual attack."""

    lam: Fraction = Fraction(1, 4)
    k: int = 3
    pending: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)
    flagged: dict = field(default_factory=dict)


@dataclass
class OpinionResult:
    source: str
    target: str
    polarity: str | None
    weight: Fraction
    rho_before: Fraction
    rho_after: Fraction
    flag: str | None


def peer_opinion(state: AggregatorState, source, target, epsilon, book: OpinionBook) -> OpinionResult:
    """Blend an opinion of ``source`` about ``target`` into target's reliability.

    The weight is lam times the source's reliability.  An opinion above the
    target's current reliability is praise, below it an attack.  When j
    answers i's pending opinion with the same polarity, one mutual exchange
    is counted; ``k`` exchanges flag the pair (cronyism for praise,
    infighting for attacks) and halve the weight of its later opinions.
    """
    state.check(source)
    state.check(target)
    if source == target:
        raise ReliabilityError("an agent cannot rate itself this way")
    eps = as_fraction(epsilon)
    if not 0 <= eps <= 1:
        raise ReliabilityError(f"opinion {eps} outside [0, 1]")
    before = state.rho[target]
    polarity = PRAISE if eps > before else ATTACK if eps < before else None
    pair = frozenset((source, target))
    if polarity is not None:
        if book.pending.get((target, source)) == polarity:
            del book.pending[(target, source)]
            key = (pair, polarity)
            book.counts[key] = book.counts.get(key, 0) + 1
            if book.counts[key] >= book.k:
                book.flagged[pair] = "cronyism" if polarity == PRAISE else "infighting"
        else:
            book.pending[(source, target)] = polarity
    w = book.lam * state.rho[source]
    if pair in book.flagged:
        w /= 2
    after = clamp((1 - w) * before + w * eps)
    state.rho[target] = after
    return OpinionResult(source, target, polarity, w, before, after, book.flagged.get(pair))


# ---------------------------------------------------------------------------
# scenarios


@dataclass
class Scenario:
    agents: list
    initial: Fraction = HALF
    channels: dict = field(default_factory=dict)
    rounds: list = field(default_factory=list)
    opinions: list = field(default_factory=list)
    network: dict = field(default_factory=dict)
    broadcasts: list = field(default_factory=list)

    @classmethod
    def from_dict(cls, data):
        agents = list(data.get("agents", []))
        if not agents:
            raise ReliabilityError("scenario declares no agents")
        rounds = []
        for r in data.get("rounds", []):
            rounds.append({
                "readings": {a: as_fraction(v) for a, v in r.get("readings", {}).items()},
                "epsilons": {a: as_fraction(v) for a, v in r.get("epsilons", {}).items()},
            })
        return cls(
            agents=agents,
            initial=as_fraction(data.get("initial", HALF)),
            channels={a: as_fraction(v) for a, v in data.get("channels", {}).items()},
            rounds=rounds,
            opinions=[(o["source"], o["target"], as_fraction(o["value"])) for o in data.get("opinions", [])],
            network={a: list(v) for a, v in data.get("network", {}).items()},
            broadcasts=[(b["origin"], as_fraction(b.get("value", 0))) for b in data.get("broadcasts", [])],
        )


def run_scenario(scn: Scenario, config: RoundConfig | None = None, book: OpinionBook | None = None):
    """Play a scenario: rounds first, then opinions, then broadcasts."""
    state = AggregatorState.fresh(scn.agents, scn.initial, scn.channels)
    book = book or OpinionBook()
    results = [run_round(state, r["readings"], config, r["epsilons"]) for r in scn.rounds]
    opinions = [peer_opinion(state, s, t, e, book) for s, t, e in scn.opinions]
    monitors = []
    if scn.broadcasts:
        net = {a: scn.network.get(a, []) for a in scn.agents}
        for origin, value in scn.broadcasts:
            monitors.append(simulate_broadcast(net, origin, value))
    return state, results, opinions, monitors
