#include "algosr/config.hpp"

#include <gtest/gtest.h>

#include "algosr/engine.hpp"
#include "algosr/errors.hpp"
#include "algosr/ris.hpp"
#include "support/stub_server.hpp"

namespace algosr {
namespace {

const std::filesystem::path kConfigs = std::filesystem::path(ALGOSR_SOURCE_DIR) / "configs";

TEST(RunConfig, Defaults) {
  const auto c = parse_run_config(R"({"initial_keywords":["urban growth"]})");
  EXPECT_EQ(c.n_k, 10u);
  EXPECT_EQ(c.max_iterations, 30);
  EXPECT_EQ(c.stability_window, 2);
  EXPECT_EQ(c.per_kw_limit, 50u);
  EXPECT_EQ(c.backend.kind, BackendKind::synthetic);
  EXPECT_EQ(c.backend.synthetic, catalog::SyntheticCatalogSpec{});
}

TEST(RunConfig, RejectsBadInput) {
  for (const char* bad : {
           "[]",
           "not json",
           R"({})",
           R"({"initial_keywords":[]})",
           R"({"initial_keywords":["a 1 x"]})",
           R"({"initial_keywords":["x1"],"n_k":0})",
           R"({"initial_keywords":["x1"],"n_k":-3})",
           R"({"initial_keywords":["x1"],"n_k":"ten"})",
           R"({"initial_keywords":["x1"],"stability_window":0})",
           R"({"initial_keywords":["x1"],"max_iterations":0})",
           R"({"initial_keywords":["x1"],"nk":5})",
           R"({"initial_keywords":["x1"],"backend":"ftp"})",
           R"({"initial_keywords":["x1"],"backend":"http"})",
           R"({"initial_keywords":["x1"],"backend":"http","http":{"base_url":"http://h","page_size":0}})",
           R"({"initial_keywords":["x1"],"synthetic":{"n_docs":0}})",
           R"({"initial_keywords":["x1"],"synthetic":{"leak":0.2}})",
           R"({"initial_keywords":["x1"],"synthetic":{"cross_topic_leak":2}})",
       }) {
    EXPECT_THROW(parse_run_config(bad), ConfigError) << bad;
  }
}

TEST(RunConfig, WriteParseRoundTrip) {
  RunConfig c;
  c.initial_keywords = {"land use", "city"};
  c.n_k = 7;
  c.backend.kind = BackendKind::http;
  c.backend.http.base_url = "https://example.org/api";
  c.backend.http.auth_token_env = "TOKEN";
  const auto text = write_run_config(c);
  EXPECT_EQ(parse_run_config(text), c);
  EXPECT_EQ(write_run_config(parse_run_config(text)), text);
  EXPECT_EQ(text.back(), '\n');
}

TEST(BundledConfigs, ReferenceConfigIsCanonical) {
  const auto path = kConfigs / "reference-synthetic.json";
  const auto c = load_run_config(path);
  EXPECT_EQ(c.initial_keywords, (std::vector<std::string>{"pasve"}));
  EXPECT_EQ(c.backend.synthetic, catalog::SyntheticCatalogSpec{});
  EXPECT_EQ(write_run_config(c), ris::read_file(path));
  const auto spec = parse_synthetic_spec(ris::read_file(kConfigs / "synthetic-spec.json"));
  EXPECT_EQ(spec, c.backend.synthetic);
  EXPECT_EQ(catalog::generate_synthetic(spec).topic_vocabulary(0)[0], "pasve");
}

std::vector<std::filesystem::path> seed_configs() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(kConfigs / "seed-queries")) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

TEST(BundledConfigs, SeedQueriesParse) {
  const auto paths = seed_configs();
  ASSERT_EQ(paths.size(), 5u);
  for (const auto& p : paths) {
    const auto c = load_run_config(p);
    EXPECT_EQ(c.backend.kind, BackendKind::http) << p;
    EXPECT_EQ(c.n_k, 100u);
    EXPECT_EQ(c.initial_keywords.size(), 1u);
    EXPECT_EQ(write_run_config(c), ris::read_file(p));
  }
}

TEST(BundledConfigs, SeedQueriesRunAgainstStub) {
  const auto fixed = testing::numbered_items(8);
  testing::StubCatalogServer stub(
      [&](const std::string&, std::size_t limit, std::size_t offset) { return fixed("shared", limit, offset); });
  ::setenv("ALGOSR_API_TOKEN", "t", 1);
  for (const auto& p : seed_configs()) {
    auto c = load_run_config(p);
    c.backend.http.base_url = stub.base_url();
    c.backend.http.min_request_interval = std::chrono::milliseconds(0);
    c.max_iterations = 2;
    auto backend = make_catalog(c.backend);
    const auto state = engine::run(c, *backend);
    EXPECT_EQ(state.corpus.size(), 8u) << p;
    EXPECT_NO_THROW(engine::check_invariants(state));
  }
  ::unsetenv("ALGOSR_API_TOKEN");
  EXPECT_THROW(make_catalog(load_run_config(seed_configs()[0]).backend), AuthMissing);
}

TEST(MakeCatalog, RisBackendResolvesRelativePath) {
  const auto dir = std::filesystem::temp_directory_path() / "algosr_config_ris";
  std::filesystem::create_directories(dir);
  ris::write_file(dir / "cat.ris", "TY  - JOUR\nTI  - urban growth\nER  - \n");
  BackendConfig b;
  b.kind = BackendKind::ris;
  b.ris_path = "cat.ris";
  auto cat = make_catalog(b, dir);
  EXPECT_EQ(cat->search({"growth", 5}).size(), 1u);
  EXPECT_THROW(make_catalog(b, dir / "missing"), Error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace algosr
