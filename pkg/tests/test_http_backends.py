"""HTTP-backed critic, judge, and log-prob provider against a local stub."""

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from infomech import HttpLogProbProvider, PairRecord, ProviderError, ResponseRecord
from infomech.harness.cache import ResponseCache
from infomech.harness.critics import (
    HttpBackendConfig,
    UnparseableVerdictError,
    llm_critic,
    llm_judge,
)
from infomech.harness.fixture import synthetic_fixture
from infomech.harness.ingest import save_jsonl
from infomech.harness.tournament import TournamentConfig, run_tournament


class _Stub:
    """Scriptable chat-completion / logprob server with request counting."""

    def __init__(self):
        self.requests = []
        self.fail_next = 0
        self.chat_reply = "[[Significant Gain]]"
        self.judge_reply = "[[A]]"

        stub = self

        class Handler(BaseHTTPRequestHandler):
            def do_POST(self):
                length = int(self.headers.get("Content-Length", 0))
                body = json.loads(self.rfile.read(length) or b"{}")
                stub.requests.append((self.path, body))
                if stub.fail_next > 0:
                    stub.fail_next -= 1
                    self.send_response(500)
                    self.end_headers()
                    return
                if self.path == "/logprob":
                    reply = {
                        "logprob": -0.5 * len(body.get("continuation", "")),
                        "tokens": max(1, len(body.get("continuation", "").split())),
                    }
                elif "messages" not in body:
                    reply = {"unexpected": "schema"}
                else:
                    prompt = body["messages"][0]["content"]
                    text = (
                        stub.judge_reply
                        if "impartial judge" in prompt
                        else stub.chat_reply
                    )
                    reply = {"choices": [{"message": {"content": text}}]}
                payload = json.dumps(reply).encode()
                self.send_response(200)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(payload)))
                self.end_headers()
                self.wfile.write(payload)

            def log_message(self, *args):
                pass

        self.server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self.thread = threading.Thread(target=self.server.serve_forever, daemon=True)
        self.thread.start()

    @property
    def url(self) -> str:
        host, port = self.server.server_address
        return f"http://{host}:{port}"

    def close(self):
        self.server.shutdown()
        self.server.server_close()


@pytest.fixture
def stub():
    server = _Stub()
    yield server
    server.close()


def make_pair(left="alpha beta", right="alpha gamma"):
    return PairRecord(
        pair_id="p",
        kind="positive",
        left=ResponseRecord("i", "a", "faithful", left),
        right=ResponseRecord("i", "b", "faithful", right),
    )


def backend(stub, **kwargs) -> HttpBackendConfig:
    kwargs.setdefault("base_delay", 0.01)
    return HttpBackendConfig(endpoint=stub.url + "/chat", model="stub-model", **kwargs)


class TestLlmCritic:
    def test_parses_stubbed_verdict(self, stub):
        verdict = llm_critic(make_pair(), backend(stub))
        assert verdict.level == "significant_gain"

    def test_prose_wrapped_tag(self, stub):
        stub.chat_reply = "Considering the shared entities... [[No Gain]]. Done."
        assert llm_critic(make_pair(), backend(stub)).level == "no_gain"

    def test_zero_tags_is_unparseable(self, stub):
        stub.chat_reply = "circumstantially similar"
        with pytest.raises(UnparseableVerdictError):
            llm_critic(make_pair(), backend(stub))

    def test_retry_then_success(self, stub):
        stub.fail_next = 2
        verdict = llm_critic(make_pair(), backend(stub))
        assert verdict.level == "significant_gain"
        assert len(stub.requests) == 3

    def test_exhausted_retries_surface(self, stub):
        stub.fail_next = 5
        with pytest.raises(ConnectionError, match="after 3 attempts"):
            llm_critic(make_pair(), backend(stub))

    def test_cache_prevents_second_request(self, stub, tmp_path):
        cache = ResponseCache(tmp_path / "cache")
        cfg = backend(stub)
        first = llm_critic(make_pair(), cfg, cache=cache)
        count = len(stub.requests)
        second = llm_critic(make_pair(), cfg, cache=cache)
        assert second == first
        assert len(stub.requests) == count


class TestLlmJudge:
    def test_a_wins(self, stub):
        assert llm_judge(make_pair(), False, backend(stub)) == "A"

    def test_c_maps_to_tie(self, stub):
        stub.judge_reply = "[[C]]"
        assert llm_judge(make_pair(), True, backend(stub), source="src") == "tie"

    def test_no_tag_error_path(self, stub):
        stub.judge_reply = "both are fine"
        with pytest.raises(UnparseableVerdictError):
            llm_judge(make_pair(), False, backend(stub))


class TestHttpLogProbProvider:
    def test_contract(self, stub):
        provider = HttpLogProbProvider(stub.url + "/logprob", base_delay=0.01)
        lp, tokens = provider.logprob("ctx", "two words")
        assert lp <= 0.0
        assert tokens == 2

    def test_memoized_within_session(self, stub):
        provider = HttpLogProbProvider(stub.url + "/logprob", base_delay=0.01)
        provider.logprob("ctx", "abc")
        count = len(stub.requests)
        provider.logprob("ctx", "abc")
        assert len(stub.requests) == count

    def test_malformed_response_raises(self, stub):
        class NoFields(_Stub):
            pass

        provider = HttpLogProbProvider(stub.url + "/chat", base_delay=0.01)
        with pytest.raises(ProviderError, match="malformed"):
            provider.logprob("ctx", "abc")


class TestHttpTournament:
    @pytest.fixture
    def tiny_dataset(self, tmp_path):
        ds = synthetic_fixture(items=3)
        path = tmp_path / "tiny.jsonl"
        save_jsonl(ds, path)
        return path

    def test_end_to_end_and_warm_cache(self, stub, tiny_dataset, tmp_path):
        cfg = TournamentConfig(
            dataset_path=str(tiny_dataset),
            output_dir=str(tmp_path / "out1"),
            seed=11,
            mechanisms=("tvd_mi", "judge_with_ctx"),
            critic_backend="http",
            endpoint=stub.url + "/chat",
            model="stub-model",
            cache_dir=str(tmp_path / "cache"),
            bootstrap_iterations=50,
            in_flight_cap=4,
            retry_base_delay=0.01,
        )
        first = run_tournament(cfg)
        assert "tvd_mi" in first.mechanisms
        requests_after_first = len(stub.requests)
        assert requests_after_first > 0

        cfg2 = TournamentConfig(
            dataset_path=str(tiny_dataset),
            output_dir=str(tmp_path / "out2"),
            seed=11,
            mechanisms=("tvd_mi", "judge_with_ctx"),
            critic_backend="http",
            endpoint=stub.url + "/chat",
            model="stub-model",
            cache_dir=str(tmp_path / "cache"),
            bootstrap_iterations=50,
            in_flight_cap=4,
            retry_base_delay=0.01,
        )
        second = run_tournament(cfg2)
        assert len(stub.requests) == requests_after_first  # zero network calls
        assert second.mechanisms["tvd_mi"].payments == first.mechanisms["tvd_mi"].payments
        for name in ("report.json", "report.csv", "excluded.log"):
            a = (tmp_path / "out1" / name).read_bytes()
            b = (tmp_path / "out2" / name).read_bytes()
            assert a == b, name

    def test_unparseable_verdicts_counted_and_reconciled(self, stub, tiny_dataset, tmp_path):
        stub.chat_reply = "no tags whatsoever"
        cfg = TournamentConfig(
            dataset_path=str(tiny_dataset),
            output_dir=str(tmp_path / "out"),
            seed=11,
            mechanisms=("tvd_mi",),
            critic_backend="http",
            endpoint=stub.url + "/chat",
            model="stub-model",
            cache_dir=str(tmp_path / "cache"),
            bootstrap_iterations=50,
            retry_base_delay=0.01,
        )
        report = run_tournament(cfg)
        acc = report.mechanisms["tvd_mi"].accounting
        assert acc["excluded_pairs"] == acc["built"]
        assert acc["scored"] == 0
        pair_rows = [r for r in report.exclusions if r["kind"] == "pair"]
        assert len(pair_rows) == acc["built"]
        # with no scorable pairs every item is excluded from the AUC table
        assert report.mechanisms["tvd_mi"].excluded_items == report.items
