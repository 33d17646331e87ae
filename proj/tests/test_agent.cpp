#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "kgforge/agent/gateway.hpp"
#include "kgforge/agent/prompts.hpp"
#include "kgforge/agent/sha256.hpp"
#include "support/paths.hpp"

using namespace kgforge;
using testsupport::TempDir;

// FIPS 180-4 vectors plus block-boundary lengths; frozen with an independent
// implementation.
TEST(Sha256, KnownVectors) {
    EXPECT_EQ(sha256_hex(""),
              "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(sha256_hex("abc"),
              "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_EQ(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq"),
              "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    EXPECT_EQ(sha256_hex(std::string(55, 'x')),
              "d5e285683cd4efc02d021a5c62014694958901005d6f71e89e0989fac77e4072");
    EXPECT_EQ(sha256_hex(std::string(56, 'x')),
              "04c26261370ee7541549d16dee320c723e3fd14671e66a099afe0a377c16888e");
    EXPECT_EQ(sha256_hex(std::string(64, 'x')),
              "7ce100971f64e7001e8fe5a51973ecdfe1ced42befe7ee8d5fd6219506b5393c");
    EXPECT_EQ(sha256_hex(std::string(1000000, 'a')),
              "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST(RenderPrompt, SubstitutesVariables) {
    PromptTemplate tpl{"populate", "Extract from: {{description}}"};
    EXPECT_EQ(render_prompt(tpl, {{"description", "X"}}), "Extract from: X");
}

TEST(RenderPrompt, MissingVariableThrows) {
    PromptTemplate tpl{"populate", "Extract from: {{description}}"};
    try {
        render_prompt(tpl, {});
        FAIL() << "expected MissingVariable";
    } catch (const MissingVariable& e) {
        EXPECT_EQ(e.name, "description");
    }
}

TEST(RenderPrompt, ExtraVariablesReportedNotFatal) {
    PromptTemplate tpl{"populate", "No placeholders here."};
    std::vector<std::string> unused;
    EXPECT_EQ(render_prompt(tpl, {{"ontology", "x"}}, &unused), "No placeholders here.");
    ASSERT_EQ(unused.size(), 1u);
    EXPECT_EQ(unused[0], "ontology");
}

TEST(RenderPrompt, ValueInsertedVerbatimWithoutRescanning) {
    PromptTemplate tpl{"expand", "Schema:\n{{ontology}}\nEnd."};
    std::string block = "ex:s ex:p \"{{not_a_var}}\" .";
    std::string out = render_prompt(tpl, {{"ontology", block}});
    EXPECT_NE(out.find(block), std::string::npos);
}

TEST(RenderPrompt, BracesWithoutValidNameStayLiteral) {
    PromptTemplate tpl{"x", "a {{ not-a-name }} b {{}} c"};
    EXPECT_EQ(render_prompt(tpl, {}), "a {{ not-a-name }} b {{}} c");
}

TEST(LoadTemplates, BundledPromptsLoadAndRender) {
    TemplateSet set = load_templates(testsupport::prompts_dir());
    for (const std::string& id : stage_template_ids()) {
        EXPECT_TRUE(set.count(id)) << id;
        EXPECT_FALSE(set.at(id).body.empty()) << id;
    }
    // stage variables each template relies on
    render_prompt(get_template(set, "bootstrap"),
                  {{"products", "p"}, {"namespace", "http://n/"}});
    render_prompt(get_template(set, "expand"),
                  {{"ontology", "o"}, {"products", "p"}, {"namespace", "http://n/"}});
    render_prompt(get_template(set, "refine"), {{"ontology", "o"}, {"namespace", "http://n/"}});
    render_prompt(get_template(set, "populate"),
                  {{"ontology", "o"},
                   {"product_id", "AC-1"},
                   {"description", "d"},
                   {"subject_iri", "http://n/p/ac-1"},
                   {"namespace", "http://n/"}});
}

TEST(LoadTemplates, MissingDirectoryFails) {
    EXPECT_THROW(load_templates("/nonexistent/prompts"), TemplateError);
}

TEST(AgentRequestDigest, FrozenAndStable) {
    AgentRequest req{"populate", "Extract from: X", {0.0, 4096}};
    // value frozen with an independent SHA-256 over
    // "populate\x1fExtract from: X\x1f0\x1f4096"
    EXPECT_EQ(req.digest(), "da70524441a7e7d9f4f0a7fc93e7455c85e745ab5f3fadbfc107d93db9423969");
    EXPECT_EQ(req.digest(), req.digest());

    AgentRequest req2{"bootstrap", "hello", {0.7, 512}};
    EXPECT_EQ(req2.digest(), "8640cfb15d4005925822567fc9f3d71d12743442e0f83420723a261b8dfa419b");

    // every field feeds the digest
    AgentRequest variant = req;
    variant.template_id = "expand";
    EXPECT_NE(variant.digest(), req.digest());
    variant = req;
    variant.rendered_prompt += "!";
    EXPECT_NE(variant.digest(), req.digest());
    variant = req;
    variant.params.temperature = 0.5;
    EXPECT_NE(variant.digest(), req.digest());
    variant = req;
    variant.params.max_output_tokens = 100;
    EXPECT_NE(variant.digest(), req.digest());
}

TEST(ReplayBackend, HitAndMiss) {
    TempDir dir("fixtures");
    FixtureStore store(dir.path());
    AgentRequest req{"populate", "prompt text", {}};
    store.save(req, AgentResponse{"recorded output", BackendKind::Http, 12.5});

    ReplayBackend replay{FixtureStore(dir.path())};
    AgentResponse resp = replay.invoke(req);
    EXPECT_EQ(resp.text, "recorded output");
    EXPECT_EQ(resp.backend, BackendKind::Replay);
    EXPECT_FALSE(resp.latency_ms.has_value());

    AgentRequest unknown{"populate", "different prompt", {}};
    try {
        replay.invoke(unknown);
        FAIL() << "expected MissingFixture";
    } catch (const MissingFixture& e) {
        EXPECT_EQ(e.digest, unknown.digest());
    }
}

TEST(FixtureStore, FilesAreDiffFriendlyJson) {
    TempDir dir("fixtures");
    FixtureStore store(dir.path());
    AgentRequest req{"refine", "the prompt", {0.0, 2048}};
    store.save(req, AgentResponse{"the answer", BackendKind::Http, std::nullopt});

    std::ifstream in(store.path_for(req.digest()));
    ASSERT_TRUE(in);
    nlohmann::json j = nlohmann::json::parse(in);
    EXPECT_EQ(j["digest"], req.digest());
    EXPECT_EQ(j["request"]["template_id"], "refine");
    EXPECT_EQ(j["request"]["params"]["max_output_tokens"], 2048);
    EXPECT_EQ(j["response"]["text"], "the answer");
    // no stray temp file left behind
    EXPECT_FALSE(std::filesystem::exists(store.path_for(req.digest()).string() + ".tmp"));
}

namespace {

// Tiny OpenAI-style stub. Each POST to /v1/chat/completions echoes a
// deterministic function of the prompt.
class StubServer {
public:
    explicit StubServer(int fail_first = 0, int fail_status = 500)
        : fail_remaining_(fail_first), fail_status_(fail_status) {
        server_.Post("/v1/chat/completions", [this](const httplib::Request& req,
                                                    httplib::Response& res) {
            ++hits_;
            last_body_ = req.body;
            auto auth = req.get_header_value("Authorization");
            last_auth_ = auth;
            if (fail_remaining_ > 0) {
                --fail_remaining_;
                res.status = fail_status_;
                res.set_content("try later", "text/plain");
                return;
            }
            nlohmann::json body = nlohmann::json::parse(req.body);
            std::string prompt = body["messages"][0]["content"].get<std::string>();
            nlohmann::json reply = {
                {"choices",
                 {{{"message", {{"role", "assistant"}, {"content", "echo: " + prompt}}}}}}};
            res.set_content(reply.dump(), "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~StubServer() {
        server_.stop();
        thread_.join();
    }

    std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }
    int hits() const { return hits_; }
    std::string last_body() const { return last_body_; }
    std::string last_auth() const { return last_auth_; }

private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::atomic<int> hits_{0};
    std::atomic<int> fail_remaining_;
    int fail_status_;
    std::string last_body_;
    std::string last_auth_;
};

}  // namespace

TEST(HttpBackend, SendsChatCompletionsRequest) {
    StubServer stub;
    HttpBackend backend({stub.base_url(), "test-model", "secret-key", 10, 0, 1});
    AgentRequest req{"populate", "generate triples", {0.0, 4096}};
    AgentResponse resp = backend.invoke(req);
    EXPECT_EQ(resp.text, "echo: generate triples");
    EXPECT_EQ(resp.backend, BackendKind::Http);
    EXPECT_TRUE(resp.latency_ms.has_value());

    nlohmann::json sent = nlohmann::json::parse(stub.last_body());
    EXPECT_EQ(sent["model"], "test-model");
    EXPECT_EQ(sent["messages"][0]["role"], "user");
    EXPECT_EQ(sent["temperature"], 0.0);
    EXPECT_EQ(sent["max_tokens"], 4096);
    EXPECT_EQ(stub.last_auth(), "Bearer secret-key");
}

TEST(HttpBackend, RetriesTransientFailuresWithIdenticalPayload) {
    StubServer stub(/*fail_first=*/2);
    HttpBackend backend({stub.base_url(), "m", "", 10, 3, 1});
    AgentRequest req{"expand", "x", {}};
    AgentResponse resp = backend.invoke(req);
    EXPECT_EQ(resp.text, "echo: x");
    EXPECT_EQ(stub.hits(), 3);
}

TEST(HttpBackend, RaisesHttpErrorAfterRetriesExhausted) {
    StubServer stub(/*fail_first=*/10, /*fail_status=*/503);
    HttpBackend backend({stub.base_url(), "m", "", 10, 2, 1});
    AgentRequest req{"expand", "x", {}};
    try {
        backend.invoke(req);
        FAIL() << "expected HttpError";
    } catch (const HttpError& e) {
        EXPECT_EQ(e.status, 503);
        EXPECT_EQ(e.body, "try later");
    }
    EXPECT_EQ(stub.hits(), 3);  // initial + 2 retries
}

TEST(RecordBackend, RecordThenReplayRoundTripsBytes) {
    StubServer stub;
    TempDir dir("fixtures");
    auto http = std::make_shared<HttpBackend>(HttpOptions{stub.base_url(), "m", "", 10, 0, 1});
    RecordBackend record(http, FixtureStore(dir.path()));

    AgentRequest req{"refine", "payload \xC3\xA9\xE2\x80\x94 bytes\nline2", {}};
    AgentResponse live = record.invoke(req);

    ReplayBackend replay{FixtureStore(dir.path())};
    AgentResponse replayed = replay.invoke(req);
    EXPECT_EQ(replayed.text, live.text);
    EXPECT_EQ(replayed.backend, BackendKind::Replay);
    EXPECT_EQ(stub.hits(), 1);  // replay never touched the network
}

TEST(AgentGateway, BoundsInflightRequests) {
    // A backend that records the max number of concurrent invocations.
    struct SlowBackend : AgentBackend {
        std::atomic<int> inflight{0};
        std::atomic<int> peak{0};
        AgentResponse invoke(const AgentRequest& req) override {
            int now = ++inflight;
            int prev = peak.load();
            while (now > prev && !peak.compare_exchange_weak(prev, now)) {
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(20));
            --inflight;
            return {"ok " + req.rendered_prompt, BackendKind::Http, std::nullopt};
        }
    };
    auto slow = std::make_shared<SlowBackend>();
    AgentGateway gw(slow, /*max_inflight=*/2);

    std::vector<std::thread> threads;
    for (int i = 0; i < 6; ++i) {
        threads.emplace_back([&gw, i] {
            AgentRequest req{"populate", "p" + std::to_string(i), {}};
            gw.invoke(req);
        });
    }
    for (auto& t : threads) t.join();
    EXPECT_LE(slow->peak.load(), 2);
}
