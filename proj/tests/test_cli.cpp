#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "doctest.h"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(QUASILAB_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  std::array<char, 4096> buf{};
  while (auto n = std::fread(buf.data(), 1, buf.size(), f)) r.out.append(buf.data(), n);
  const int status = pclose(f);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json cli_json(const std::string& args) {
  auto r = cli(args + " --json");
  INFO(r.out);
  REQUIRE(r.code != 1);
  return nlohmann::json::parse(r.out);
}

std::string text_answer(const std::string& out) {
  auto colon = out.find(": ");
  auto eol = out.find('\n');
  return out.substr(colon + 2, eol - colon - 2);
}

const char* kImplP = "\"imp(imp(imp(x,y),imp(imp(y,x),z)),z)\"";

}  // namespace

TEST_CASE("spec examples") {
  auto sc = cli_json("sc -K corpus:kleene3");
  CHECK(sc["answer"] == "no");
  CHECK(sc["witness"]["pair"] == nlohmann::json({"0", "a"}));
  CHECK(sc["schema"] == "quasilab/1");

  auto pr = cli_json("primitive -K corpus:impl2");
  CHECK(pr["answer"] == "yes");

  auto ct = cli("check-term -K corpus:impl2 --role dual-i-disc --term " + std::string(kImplP));
  CHECK(ct.code == 0);
  CHECK(text_answer(ct.out) == "yes");
}

TEST_CASE("exit codes") {
  CHECK(cli("info -K corpus:m3").code == 0);
  CHECK(cli("derivable -K corpus:z4 --rule \"add(x,x) = zero => x = zero\"").code == 0);
  auto parse = cli("derivable -K corpus:z4 --rule \"add(x,x = zero\"");
  CHECK(parse.code == 1);
  CHECK(parse.out.find("parse error") != std::string::npos);
  auto deep = cli("free -K corpus:fano -n 2");
  CHECK(deep.code == 2);
  CHECK(deep.out.find("budget: deep") != std::string::npos);
  auto budget = cli("free -K corpus:lattice2 -n 3 --budget free_size=5");
  CHECK(budget.code == 2);
  CHECK(budget.out.find("free_size") != std::string::npos);
  CHECK(cli("sc -K corpus:nonexistent").code == 1);
  CHECK(cli("nosuchverb").code != 0);
}

TEST_CASE("unknown answers name the tripped cap") {
  auto j = cli_json("free -K corpus:lattice2 -n 3 --budget free_size=5");
  CHECK(j["answer"] == "unknown");
  CHECK(j["budget"] == "free_size");
}

TEST_CASE("text and JSON agree on the answer") {
  const std::vector<std::string> runs{
      "sc -K corpus:m3",
      "sc -K corpus:lattice2",
      "primitive -K corpus:z4",
      "con -K corpus:chain3",
      "conq -K corpus:z4 -A corpus:z4",
      "free -K corpus:lattice2 -n 3",
      "derivable -K corpus:m3 --rule \"neg(x) = x => x = y\"",
      "admissible -K corpus:m3 --rule \"neg(x) = x => x = y\"",
      "core -K corpus:z4 -A corpus:z2",
      "exact -K corpus:m3 -A corpus:m2 --max-vars 1",
      "char -K corpus:m3 -A corpus:m2",
      "projective -K corpus:m2",
      "wproj -K corpus:m3",
      "csc -K corpus:heyting3 --clone \"meet(x,y); imp(x,y)\"",
      "upresent -K corpus:heyting3 --principal a,1 --clone \"meet(x,y); imp(x,y)\"",
      std::string("check-term -K corpus:impl2 --role dual-i-disc --term ") + kImplP,
      "synth-discriminator -K corpus:sigma3 --rtpip \"p(x,y,z)\"",
      "ideals -K corpus:z4 --term \"add(x,neg(y))\"",
      "filtral -K corpus:m2 -K corpus:m2 --projection 0",
      "corpus fano",
  };
  for (const auto& args : runs) {
    INFO(args);
    auto t = cli(args);
    REQUIRE(t.code != 1);
    auto j = cli_json(args);
    CHECK(text_answer(t.out) == j["answer"].get<std::string>());
  }
}

TEST_CASE("witnesses replay under --verify") {
  const std::vector<std::string> runs{
      "con -K corpus:chain3",
      "conq -K corpus:z4 -A corpus:z4",
      "free -K corpus:z4 -n 2",
      "derivable -K corpus:z4 --rule \"add(x,x) = zero => x = zero\"",
      "admissible -K corpus:z4 --rule \"add(x,x) = zero => x = zero\"",
      "sc -K corpus:m3",
      "core -K corpus:m3 -A corpus:m3",
      "exact -K corpus:m3 -A corpus:m2 --max-vars 1",
      "char -K corpus:m3 -A corpus:m2",
      "projective -K corpus:m2",
      "wproj -K corpus:m3",
      std::string("check-term -K corpus:impl2 --role dual-i-disc --term ") + kImplP,
      "synth-discriminator -K corpus:sigma3 --rtpip \"p(x,y,z)\"",
      "upresent -K corpus:heyting3 --principal a,1 --clone \"meet(x,y); imp(x,y)\"",
  };
  for (const auto& args : runs) {
    INFO(args);
    auto r = cli(args + " --verify");
    CHECK(r.code == 0);
    CHECK(r.out.find("verify: ok") != std::string::npos);
  }
}

TEST_CASE("corpus") {
  auto j = cli_json("corpus fano");
  CHECK(j["answer"] == "yes");
  CHECK(j["witness"]["text"].get<std::string>().find("elements 0 p1") != std::string::npos);
  auto con = cli_json("con -K corpus:fano");
  CHECK(con["answer"] == "yes");
  auto m4 = cli_json("con -K corpus:m4");
  CHECK(m4["witness"]["nodes"].size() == 2);
  auto list = cli("corpus");
  CHECK(list.code == 0);
  CHECK(list.out.find("sigma3") != std::string::npos);
}
