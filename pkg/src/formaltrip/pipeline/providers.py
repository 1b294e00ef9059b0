"""Completion providers: HTTP chat endpoints plus offline oracles and replay.

Every request is a single-turn, stateless exchange; there is no session
object anywhere, which is what guarantees the round trip's two halves
share no conversation state. Replies are cached keyed by (model, prompt
hash, temperature) so interrupted runs resume without re-billing.
"""

from __future__ import annotations

import hashlib
import json
import logging
import random
import threading
import time
from dataclasses import dataclass
from pathlib import Path

from ..syntax import And, Not, Or, Star, extract_formal, make_expression
from ..syntax.nodes import Concat, FolFormula, FormalExpression, Quantified
from ..verify import ProverBudget, verify_pair
from . import nl_codec

logger = logging.getLogger(__name__)

HTTP_CHAT = "http_chat"
SCRIPTED_REPLAY = "scripted_replay"
PERFECT_ORACLE = "perfect_oracle"
CORRUPTING_ORACLE = "corrupting_oracle"

PROVIDER_KINDS = (HTTP_CHAT, SCRIPTED_REPLAY, PERFECT_ORACLE, CORRUPTING_ORACLE)


class ProviderError(RuntimeError):
    pass


class Timeout(ProviderError):
    pass


class RateLimited(ProviderError):
    pass


class TransportError(ProviderError):
    pass


class ReplayMiss(ProviderError):
    pass


@dataclass
class ProviderConfig:
    kind: str = PERFECT_ORACLE
    endpoint: str = ""
    model: str = ""
    temperature: float = 0.0
    max_tokens: int = 1024
    timeout: float = 30.0
    max_attempts: int = 3
    backoff_base: float = 1.0
    rate_limit_rpm: float = 0.0  # 0 disables limiting (offline kinds)
    credential_env: str = ""
    corruption_prob: float = 1.0
    seed: int = 0
    fixtures_path: str = ""

    def __post_init__(self):
        if self.kind not in PROVIDER_KINDS:
            raise ValueError(f"unknown provider kind {self.kind!r}")
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.kind == HTTP_CHAT and self.rate_limit_rpm <= 0:
            raise ValueError("http_chat requires a positive rate limit")
        if not self.model:
            self.model = self.kind.replace("_", "-")

    @property
    def deterministic(self) -> bool:
        return self.kind != HTTP_CHAT


@dataclass
class Completion:
    text: str
    attempts: int = 1
    seconds: float = 0.0
    prompt_tokens: int | None = None
    completion_tokens: int | None = None
    cached: bool = False


def prompt_hash(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


class ResponseCache:
    """Append-only jsonl cache, safe under concurrent access."""

    def __init__(self, path: str | Path | None):
        self.path = Path(path) if path else None
        self._lock = threading.Lock()
        self._entries: dict[str, str] = {}
        if self.path and self.path.exists():
            for line in self.path.read_text(encoding="utf-8").splitlines():
                if line.strip():
                    row = json.loads(line)
                    self._entries[row["key"]] = row["reply"]

    @staticmethod
    def key(model: str, prompt: str, temperature: float) -> str:
        return f"{model}:{prompt_hash(prompt)}:{temperature}"

    def get(self, key: str) -> str | None:
        with self._lock:
            return self._entries.get(key)

    def put(self, key: str, reply: str):
        with self._lock:
            if key in self._entries:
                return
            self._entries[key] = reply
            if self.path:
                with self.path.open("a", encoding="utf-8") as fh:
                    fh.write(json.dumps({"key": key, "reply": reply}) + "\n")


class RateLimiter:
    """Evenly spaced token bucket: at most rpm requests per minute."""

    def __init__(self, rpm: float):
        self.interval = 60.0 / rpm if rpm > 0 else 0.0
        self._lock = threading.Lock()
        self._next_allowed = 0.0

    def wait(self):
        if self.interval <= 0:
            return
        with self._lock:
            now = time.monotonic()
            delay = max(0.0, self._next_allowed - now)
            self._next_allowed = max(now, self._next_allowed) + self.interval
        if delay > 0:
            time.sleep(delay)


class Provider:
    """Stateful wrapper bundling config, fixtures, cache, and rate limiting."""

    def __init__(
        self,
        config: ProviderConfig,
        cache: ResponseCache | None = None,
        transport=None,
        budget: ProverBudget | None = None,
    ):
        self.config = config
        self.cache = cache
        self.transport = transport or _http_transport
        self.limiter = RateLimiter(config.rate_limit_rpm)
        self.budget = budget or ProverBudget()
        self._fixtures: dict[str, str] | None = None

    # -- public ------------------------------------------------------------

    def complete(self, prompt: str) -> Completion:
        key = ResponseCache.key(self.config.model, prompt, self.config.temperature)
        if self.cache is not None:
            hit = self.cache.get(key)
            if hit is not None:
                return Completion(hit, attempts=0, cached=True)
        completion = self._complete_uncached(prompt)
        if self.cache is not None:
            self.cache.put(key, completion.text)
        return completion

    # -- kinds ------------------------------------------------------------

    def _complete_uncached(self, prompt: str) -> Completion:
        kind = self.config.kind
        if kind == HTTP_CHAT:
            return self._http(prompt)
        if kind == SCRIPTED_REPLAY:
            return Completion(self._replay(prompt))
        if kind == PERFECT_ORACLE:
            return Completion(self._oracle(prompt, corrupt=False))
        if kind == CORRUPTING_ORACLE:
            return Completion(self._oracle(prompt, corrupt=True))
        raise ProviderError(f"unknown provider kind {kind!r}")

    def _replay(self, prompt: str) -> str:
        if self._fixtures is None:
            if not self.config.fixtures_path:
                raise ReplayMiss("no fixtures file configured")
            self._fixtures = load_fixtures(self.config.fixtures_path)
        try:
            return self._fixtures[prompt_hash(prompt)]
        except KeyError:
            raise ReplayMiss(
                f"no recorded reply for prompt hash {prompt_hash(prompt)[:12]}..."
            ) from None

    def _http(self, prompt: str) -> Completion:
        import os

        headers = {"Content-Type": "application/json"}
        if self.config.credential_env:
            key = os.environ.get(self.config.credential_env, "")
            if key:
                headers["Authorization"] = f"Bearer {key}"
        payload = {
            "model": self.config.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": self.config.temperature,
            "max_tokens": self.config.max_tokens,
        }
        if logger.isEnabledFor(logging.DEBUG):
            redacted = {k: ("<redacted>" if k == "Authorization" else v) for k, v in headers.items()}
            logger.debug("request %s headers=%s body=%s", self.config.endpoint, redacted, payload)
        started = time.monotonic()
        last_error: Exception | None = None
        for attempt in range(1, self.config.max_attempts + 1):
            self.limiter.wait()
            try:
                body = self.transport(
                    self.config.endpoint, payload, headers, self.config.timeout
                )
                if logger.isEnabledFor(logging.DEBUG):
                    logger.debug("response attempt=%d body=%s", attempt, body)
                usage = body.get("usage", {})
                return Completion(
                    text=body["choices"][0]["message"]["content"],
                    attempts=attempt,
                    seconds=time.monotonic() - started,
                    prompt_tokens=usage.get("prompt_tokens"),
                    completion_tokens=usage.get("completion_tokens"),
                )
            except (Timeout, RateLimited, TransportError) as e:
                last_error = e
                if attempt < self.config.max_attempts:
                    time.sleep(self.config.backoff_base * (2 ** (attempt - 1)))
        raise TransportError(
            f"{self.config.max_attempts} attempts failed: {last_error}"
        )

    # -- oracles ----------------------------------------------------------

    def _oracle(self, prompt: str, corrupt: bool) -> str:
        task = classify_prompt(prompt)
        if task.direction == "interpret":
            expr = task.expression
            if expr is None:
                raise ProviderError("oracle could not parse the embedded formula")
            return nl_codec.describe(expr)
        if task.direction == "compile":
            expr = nl_codec.parse_description(task.description, task.formalism)
            if corrupt and self._corruption_roll(prompt):
                expr = corrupt_expression(expr, self._rng(prompt))
            return expr.canonical_text
        # judge: answer with the formal verifier's verdict
        verdict = verify_pair(
            task.formalism,
            task.pair[0].ast,
            task.pair[1].ast,
            budget=self.budget,
        )
        answer = "yes" if verdict.equivalent else "no"
        if corrupt and self._corruption_roll(prompt):
            answer = "no" if answer == "yes" else "yes"
        return f"The formal verifier decides this pair.\n[Answer] {answer}"

    def _rng(self, prompt: str) -> random.Random:
        seed = int(prompt_hash(prompt)[:12], 16) ^ self.config.seed
        return random.Random(seed)

    def _corruption_roll(self, prompt: str) -> bool:
        if self.config.corruption_prob >= 1.0:
            return True
        return self._rng(prompt).random() < self.config.corruption_prob


def complete(provider: Provider | ProviderConfig, prompt: str) -> str:
    """Single-turn completion; returns the reply text."""
    if isinstance(provider, ProviderConfig):
        provider = Provider(provider)
    return provider.complete(prompt).text


def load_fixtures(path: str | Path) -> dict[str, str]:
    fixtures: dict[str, str] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            row = json.loads(line)
            fixtures[row["prompt_sha256"]] = row["reply"]
    return fixtures


def _http_transport(endpoint: str, payload: dict, headers: dict, timeout: float) -> dict:
    import requests

    try:
        resp = requests.post(endpoint, json=payload, headers=headers, timeout=timeout)
    except requests.Timeout as e:
        raise Timeout(str(e)) from e
    except requests.RequestException as e:
        raise TransportError(str(e)) from e
    if resp.status_code == 429:
        raise RateLimited("429 from endpoint")
    if resp.status_code >= 500:
        raise TransportError(f"server error {resp.status_code}")
    if resp.status_code != 200:
        raise TransportError(f"unexpected status {resp.status_code}: {resp.text[:200]}")
    return resp.json()


# ---------------------------------------------------------------------------
# prompt classification (oracles only)

@dataclass
class PromptTask:
    direction: str  # interpret | compile | judge
    formalism: str
    expression: FormalExpression | None = None
    description: str = ""
    pair: tuple = ()


def classify_prompt(prompt: str) -> PromptTask:
    formalism = _formalism_of(prompt)
    if "[NL DESCRIPTION]" in prompt:
        description = prompt.rsplit("[NL DESCRIPTION]", 1)[1].strip()
        return PromptTask("compile", formalism, description=description)
    if "[Formula 1]" in prompt:
        first = _between(prompt, "[Formula 1]", "[Formula 2]")
        second = prompt.rsplit("[Formula 2]", 1)[1].strip()
        left = extract_formal(first, formalism)
        right = extract_formal(second, formalism)
        if isinstance(left, FormalExpression) and isinstance(right, FormalExpression):
            return PromptTask("judge", formalism, pair=(left, right))
        raise ProviderError("judge prompt carries unparseable formulas")
    if "[FORMULA]" in prompt:
        tail = prompt.rsplit("[FORMULA]", 1)[1].strip()
        expr = extract_formal(tail, formalism)
        if isinstance(expr, FormalExpression):
            return PromptTask("interpret", formalism, expression=expr)
        return PromptTask("interpret", formalism, expression=None)
    raise ProviderError("prompt carries no recognized task marker")


def _between(text: str, start: str, end: str) -> str:
    return text.split(start, 1)[1].rsplit(end, 1)[0].strip()


def _formalism_of(prompt: str) -> str:
    lowered = prompt.lower()
    if "regular expression" in lowered:
        return "regex"
    if "first-order logic" in lowered or "first order logic" in lowered:
        return "fol"
    return "prop"


# ---------------------------------------------------------------------------
# corruption (metric plumbing tests)

def corrupt_expression(expr: FormalExpression, rng: random.Random) -> FormalExpression:
    """Flip exactly one operator; falls back to a wrapping when none exists."""
    if expr.formalism == "regex":
        stars = _star_paths(expr.ast, ())
        if stars:
            path = stars[rng.randrange(len(stars))]
            return make_expression("regex", _unwrap_star(expr.ast, path))
        return make_expression("regex", Star(expr.ast))
    root = expr.ast.matrix if expr.formalism == "fol" else expr.ast
    flippable = _binary_paths(root, ())
    if flippable:
        path = flippable[rng.randrange(len(flippable))]
        new_root = _flip_at(root, path)
    else:
        new_root = Not(root)
    if expr.formalism == "fol":
        return make_expression("fol", FolFormula(expr.ast.prefix, new_root))
    return make_expression("prop", new_root)


def _binary_paths(node, path) -> list[tuple]:
    out = []
    if isinstance(node, (And, Or)):
        out.append(path)
        for i, c in enumerate(node.children):
            out.extend(_binary_paths(c, path + (i,)))
    elif isinstance(node, Not):
        out.extend(_binary_paths(node.child, path + (0,)))
    elif isinstance(node, Quantified):
        out.extend(_binary_paths(node.body, path + (0,)))
    return out


def _flip_at(node, path):
    if not path:
        if isinstance(node, And):
            return Or(node.children)
        if isinstance(node, Or):
            return And(node.children)
        raise ValueError("path does not address a binary operator")
    i = path[0]
    if isinstance(node, (And, Or)):
        children = list(node.children)
        children[i] = _flip_at(children[i], path[1:])
        return type(node)(tuple(children))
    if isinstance(node, Not):
        return Not(_flip_at(node.child, path[1:]))
    if isinstance(node, Quantified):
        return Quantified(node.kind, node.variables, _flip_at(node.body, path[1:]))
    raise ValueError("invalid path")


def _star_paths(node, path) -> list[tuple]:
    out = []
    if isinstance(node, Star):
        out.append(path)
        out.extend(_star_paths(node.child, path + (0,)))
    elif isinstance(node, Concat):
        for i, c in enumerate(node.children):
            out.extend(_star_paths(c, path + (i,)))
    return out


def _unwrap_star(node, path):
    if not path:
        if isinstance(node, Star):
            return node.child
        raise ValueError("path does not address a star")
    i = path[0]
    if isinstance(node, Concat):
        children = list(node.children)
        children[i] = _unwrap_star(children[i], path[1:])
        return Concat(tuple(children))
    if isinstance(node, Star):
        return Star(_unwrap_star(node.child, path[1:]))
    raise ValueError("invalid path")
