#include "betafreq/run_config.hpp"

#include <json.hpp>

#include "betafreq/errors.hpp"

namespace betafreq {

using nlohmann::ordered_json;

std::string RunConfig::to_json() const {
  ordered_json j;
  j["command"] = command;
  j["beta"] = beta_spec;
  j["algo"] = algo;
  j["p"] = p;
  j["x"] = x;
  j["n"] = n;
  j["seed"] = seed;
  j["samples"] = samples;
  j["m"] = m;
  j["depth"] = depth;
  j["bins"] = bins;
  j["steps"] = steps;
  j["burn_in"] = burn_in;
  j["count"] = count;
  j["horizon"] = horizon;
  j["arith"] = arith;
  j["base_bits"] = base_bits;
  j["max_restarts"] = max_restarts;
  j["out"] = out;
  j["summary_out"] = summary_out;
  j["threads"] = threads;
  j["only"] = only;
  return j.dump(2);
}

RunConfig RunConfig::from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad config JSON: ") + e.what());
  }
  RunConfig c;
  try {
    c.command = j.at("command").get<std::string>();
    c.beta_spec = j.at("beta").get<std::string>();
    c.algo = j.at("algo").get<std::string>();
    c.p = j.at("p").get<std::string>();
    c.x = j.at("x").get<std::string>();
    c.n = j.at("n").get<unsigned long>();
    c.seed = j.at("seed").get<unsigned long>();
    c.samples = j.at("samples").get<unsigned long>();
    c.m = j.at("m").get<int>();
    c.depth = j.at("depth").get<int>();
    c.bins = j.at("bins").get<int>();
    c.steps = j.at("steps").get<unsigned long>();
    c.burn_in = j.at("burn_in").get<unsigned long>();
    c.count = j.at("count").get<unsigned long>();
    c.horizon = j.at("horizon").get<unsigned long>();
    c.arith = j.at("arith").get<std::string>();
    c.base_bits = j.at("base_bits").get<long>();
    c.max_restarts = j.at("max_restarts").get<int>();
    c.out = j.at("out").get<std::string>();
    c.summary_out = j.at("summary_out").get<std::string>();
    c.threads = j.at("threads").get<int>();
    c.only = j.at("only").get<std::vector<int>>();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("missing config field: ") + e.what());
  }
  return c;
}

} // namespace betafreq
