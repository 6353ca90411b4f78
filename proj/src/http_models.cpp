#include <httplib.h>

#include <thread>

#include "tmn/errors.hpp"
#include "tmn/models.hpp"

namespace tmn::models {
namespace {

// One client per service instance; httplib serializes per-connection use.
class HttpBase {
 public:
  HttpBase(std::string base_url, RetryPolicy retry)
      : client_(base_url), base_url_(std::move(base_url)), retry_(retry) {
    client_.set_connection_timeout(5, 0);
    client_.set_read_timeout(30, 0);
  }

  nlohmann::json post(const std::string& path, const nlohmann::json& body) {
    std::string payload = body.dump();
    std::string last_error;
    for (int attempt = 0; attempt < retry_.attempts; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(retry_.base_backoff * (1 << (attempt - 1)));
      }
      httplib::Result result = client_.Post(path, payload, "application/json");
      if (!result) {
        last_error = httplib::to_string(result.error());
        continue;
      }
      if (result->status >= 500) {
        last_error = "status " + std::to_string(result->status);
        continue;
      }
      if (result->status != 200) {
        throw ServiceUnavailable(base_url_ + path + ": status " +
                                 std::to_string(result->status));
      }
      try {
        return nlohmann::json::parse(result->body);
      } catch (const nlohmann::json::exception& e) {
        throw ServiceUnavailable(base_url_ + path + ": bad response: " + e.what());
      }
    }
    throw ServiceUnavailable(base_url_ + path + ": " + last_error);
  }

 private:
  httplib::Client client_;
  std::string base_url_;
  RetryPolicy retry_;
};

class HttpQa : public QaService, HttpBase {
 public:
  using HttpBase::HttpBase;

  ScoredAnswer answer(const std::string& question, const std::string& context) override {
    nlohmann::json reply = post("/answer", {{"question", question}, {"context", context}});
    ScoredAnswer out;
    out.score = reply.value("score", 0.0);
    if (reply.contains("answer") && !reply.at("answer").is_null()) {
      out.text = reply.at("answer").get<std::string>();
      out.no_answer = false;
    } else {
      out.no_answer = true;
      out.score = 0.0;
    }
    return out;
  }
};

class HttpGenerator : public GeneratorService, HttpBase {
 public:
  using HttpBase::HttpBase;

  std::vector<std::string> generate(const GenRequest& request) override {
    nlohmann::json body = {{"context", request.context},
                           {"answer", request.answer},
                           {"vocab", request.vocabulary},
                           {"count", request.count},
                           {"top_p", request.sampling.top_p},
                           {"top_k", request.sampling.top_k},
                           {"max_len", request.sampling.max_len}};
    if (request.seed) body["seed"] = *request.seed;
    nlohmann::json reply = post("/generate", body);
    std::vector<std::string> out;
    for (const auto& question : reply.at("questions")) {
      out.push_back(question.get<std::string>());
    }
    return out;
  }
};

class HttpNextGen : public NextGenService, HttpBase {
 public:
  using HttpBase::HttpBase;

  std::vector<RawCandidate> next(const std::string& history, int count,
                                 const Sampling& sampling,
                                 std::optional<std::uint64_t> seed) override {
    nlohmann::json body = {{"history", history},
                           {"count", count},
                           {"top_p", sampling.top_p},
                           {"top_k", sampling.top_k}};
    if (seed) body["seed"] = *seed;
    nlohmann::json reply = post("/next", body);
    std::vector<RawCandidate> out;
    for (const auto& entry : reply.at("candidates")) {
      out.push_back(RawCandidate{entry.at("text").get<std::string>(),
                                 entry.value("logprob", 0.0)});
    }
    return out;
  }
};

class HttpScorer : public ScorerService, HttpBase {
 public:
  using HttpBase::HttpBase;

  double negative_prob(const std::string& history) override {
    nlohmann::json reply = post("/score", {{"history", history}});
    return reply.at("negative_prob").get<double>();
  }
};

}  // namespace

std::unique_ptr<QaService> make_http_qa(const std::string& base_url, RetryPolicy retry) {
  return std::make_unique<HttpQa>(base_url, retry);
}

std::unique_ptr<GeneratorService> make_http_generator(const std::string& base_url,
                                                      RetryPolicy retry) {
  return std::make_unique<HttpGenerator>(base_url, retry);
}

std::unique_ptr<NextGenService> make_http_nextgen(const std::string& base_url,
                                                  RetryPolicy retry) {
  return std::make_unique<HttpNextGen>(base_url, retry);
}

std::unique_ptr<ScorerService> make_http_scorer(const std::string& base_url,
                                                RetryPolicy retry) {
  return std::make_unique<HttpScorer>(base_url, retry);
}

}  // namespace tmn::models
