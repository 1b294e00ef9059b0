import json
import random

import pytest

from conftest import random_fol, random_prop, random_regex
from formaltrip.pipeline import (
    Provider,
    ProviderConfig,
    RateLimited,
    ReplayMiss,
    ResponseCache,
    TransportError,
    corrupt_expression,
    describe,
    parse_description,
    prompt_hash,
)
from formaltrip.syntax import make_expression, parse_expression
from formaltrip.verify import equivalent_prop, equivalent_regex
from formaltrip.verify.verdict import Status


# --- nl codec ----------------------------------------------------------------

def test_codec_round_trips_random_expressions():
    rng = random.Random(31)
    for _ in range(300):
        expr = make_expression("prop", random_prop(rng))
        assert parse_description(describe(expr), "prop") == expr
    for _ in range(300):
        expr = make_expression("regex", random_regex(rng))
        assert parse_description(describe(expr), "regex") == expr
    for _ in range(300):
        expr = make_expression("fol", random_fol(rng))
        assert parse_description(describe(expr), "fol") == expr


def test_codec_handles_english_vocabulary():
    expr = parse_expression("fol", "∃ x1. (mourn(Morris, Archie) ∧ pardon(x1, Enzo))")
    assert parse_description(describe(expr), "fol") == expr


# --- config ------------------------------------------------------------------

def test_http_requires_rate_limit():
    with pytest.raises(ValueError):
        ProviderConfig(kind="http_chat", endpoint="http://x", rate_limit_rpm=0)


def test_negative_temperature_rejected():
    with pytest.raises(ValueError):
        ProviderConfig(kind="perfect_oracle", temperature=-1)


# --- replay --------------------------------------------------------------------

def test_replay_returns_recorded_reply(tmp_path):
    fixture = tmp_path / "f.jsonl"
    fixture.write_text(
        json.dumps({"prompt_sha256": prompt_hash("hello"), "reply": "recorded!"}) + "\n"
    )
    provider = Provider(
        ProviderConfig(kind="scripted_replay", fixtures_path=str(fixture))
    )
    assert provider.complete("hello").text == "recorded!"
    with pytest.raises(ReplayMiss):
        provider.complete("unknown prompt")


# --- retry / transport -----------------------------------------------------------

def flaky_transport(failures: list[Exception]):
    calls = {"n": 0}

    def transport(endpoint, payload, headers, timeout):
        calls["n"] += 1
        if failures:
            raise failures.pop(0)
        return {
            "choices": [{"message": {"content": f"ok after {calls['n']}"}}],
            "usage": {"prompt_tokens": 10, "completion_tokens": 2},
        }

    return transport, calls


def http_config():
    return ProviderConfig(
        kind="http_chat",
        endpoint="http://example.invalid/v1/chat",
        model="test-model",
        rate_limit_rpm=100000,
        backoff_base=0.001,
        max_attempts=3,
    )


def test_two_failures_then_success_is_three_attempts():
    transport, calls = flaky_transport([RateLimited("429"), TransportError("503")])
    provider = Provider(http_config(), transport=transport)
    completion = provider.complete("prompt")
    assert completion.text == "ok after 3"
    assert completion.attempts == 3
    assert calls["n"] == 3


def test_retries_exhausted_raises_transport_error():
    transport, calls = flaky_transport(
        [RateLimited("429"), RateLimited("429"), RateLimited("429")]
    )
    provider = Provider(http_config(), transport=transport)
    with pytest.raises(TransportError):
        provider.complete("prompt")
    assert calls["n"] == 3


def test_cache_prevents_second_request(tmp_path):
    transport, calls = flaky_transport([])
    cache = ResponseCache(tmp_path / "cache.jsonl")
    provider = Provider(http_config(), cache=cache, transport=transport)
    first = provider.complete("prompt")
    second = provider.complete("prompt")
    assert calls["n"] == 1
    assert second.cached and second.text == first.text
    # a fresh cache instance reloads from disk
    cache2 = ResponseCache(tmp_path / "cache.jsonl")
    provider2 = Provider(http_config(), cache=cache2, transport=transport)
    assert provider2.complete("prompt").cached


# --- corruption -------------------------------------------------------------------

def test_forced_flip_on_conjunction():
    expr = parse_expression("prop", "p1 ∧ p2")
    rng = random.Random(0)
    corrupted = corrupt_expression(expr, rng)
    assert corrupted.canonical_text == "(p1 ∨ p2)"


def test_flip_single_operator_is_inequivalent():
    rng = random.Random(5)
    for left, right in (("p1", "p2"), ("p3", "p7")):
        expr = parse_expression("prop", f"{left} ∧ {right}")
        corrupted = corrupt_expression(expr, rng)
        verdict = equivalent_prop(expr.ast, corrupted.ast)
        assert verdict.status is Status.NOT_EQUIVALENT


def test_atom_corruption_wraps_negation():
    expr = parse_expression("prop", "p1")
    corrupted = corrupt_expression(expr, random.Random(0))
    assert corrupted.canonical_text == "¬p1"


def test_regex_corruption_changes_language_usually():
    expr = parse_expression("regex", "(01)*1")
    corrupted = corrupt_expression(expr, random.Random(0))
    assert corrupted.canonical_text != expr.canonical_text
    verdict = equivalent_regex(expr.ast, corrupted.ast, {"0", "1"})
    assert verdict.status is Status.NOT_EQUIVALENT


def test_rate_limiter_spaces_requests():
    import time

    from formaltrip.pipeline.providers import RateLimiter

    limiter = RateLimiter(rpm=60 * 50)  # 50 per second -> 20ms spacing
    started = time.monotonic()
    for _ in range(4):
        limiter.wait()
    elapsed = time.monotonic() - started
    assert elapsed >= 0.055  # three 20ms gaps, allowing scheduler slack


def test_http_chat_against_local_server():
    import http.server
    import threading

    from formaltrip.pipeline.providers import classify_prompt
    from formaltrip.pipeline import describe, parse_description

    class Handler(http.server.BaseHTTPRequestHandler):
        calls = 0

        def do_POST(self):
            type(self).calls += 1
            length = int(self.headers["Content-Length"])
            payload = json.loads(self.rfile.read(length))
            assert payload["messages"][0]["role"] == "user"
            prompt = payload["messages"][0]["content"]
            task = classify_prompt(prompt)
            if task.direction == "interpret":
                reply = describe(task.expression)
            else:
                reply = parse_description(task.description, task.formalism).canonical_text
            body = json.dumps(
                {
                    "choices": [{"message": {"content": reply}}],
                    "usage": {"prompt_tokens": 7, "completion_tokens": 3},
                }
            ).encode()
            self.send_response(200)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def log_message(self, *args):
            pass

    server = http.server.ThreadingHTTPServer(("127.0.0.1", 0), Handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        from formaltrip.grammar import PROP, GenerationConfig, VocabularyConfig, generate_dataset
        from formaltrip.pipeline import load_template_set
        from formaltrip.pipeline.runner import round_trip

        records, _ = generate_dataset(
            PROP, VocabularyConfig(),
            GenerationConfig(depth=5, branching=10, sample_count=2, batches=1, seed=1),
        )
        config = ProviderConfig(
            kind="http_chat",
            endpoint=f"http://127.0.0.1:{server.server_address[1]}/v1/chat/completions",
            model="local-test",
            rate_limit_rpm=100000,
        )
        provider = Provider(config)
        out = round_trip(records[0], provider, load_template_set("prop", 0))
        assert out.verdict_status == "equivalent"
        assert out.tokens["interpret_prompt"] == 7
        assert out.timings["interpret_seconds"] > 0  # live provider records real timings
        assert Handler.calls == 2
    finally:
        server.shutdown()
