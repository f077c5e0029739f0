// Copyright 2026 The Cyclerec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cyclerec/reports.hpp"

#include <cmath>
#include <sstream>

#include "gtest/gtest.h"

using namespace cyclerec;

TEST(Sha256, KnownAnswers) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(FormatNumber, RoundTrips) {
  for (double v : {0.1, 1.0 / 3, 1e-17, -2.5, 0.0}) {
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
  EXPECT_EQ(format_number(NAN), "NaN");
  EXPECT_EQ(format_number(5.0), "5");
}

TEST(CsvField, Quoting) {
  EXPECT_EQ(csv_field("ZI"), "ZI");
  EXPECT_EQ(csv_field("{IZ, ZZ}"), "\"{IZ, ZZ}\"");
  EXPECT_EQ(csv_field("a\"b"), "\"a\"\"b\"");
}

namespace {

Cycle cycle() {
  Cycle c;
  c.id = "cx";
  c.gates = {{"CX", {0, 1}}};
  return c;
}

CerResult exact(const PauliDistribution& p) {
  CerResult r;
  r.cycle_id = "cx";
  r.hard = cycle();
  r.n = 2;
  r.k = 1;
  r.cycle_label = describe_cycle(r.hard, 2);
  r.supports = parallel_supports(r.hard, 2);
  SupportResult s;
  s.support = QubitSet{0, 1};
  s.label = "(0,1): CX";
  s.table = exact_marginal_table(p, s.support, r.hard.clifford(2));
  for (size_t i = 0; i < s.table.rows.size(); ++i) s.fidelities.push_back({});
  r.tables.push_back(s);
  return r;
}

}  // namespace

TEST(HeatmapCsv, StampedGrid) {
  auto p = PauliDistribution(2, {{Pauli::from_label("II"), 0.97}, {Pauli::from_label("IZ"), 0.03}});
  ReportHeader h{"abc123", 42};
  std::string csv = heatmap_csv(heatmap_table({exact(p)}, 0.0), h);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# schema=cyclerec.heatmap/1");
  std::getline(in, line);
  EXPECT_EQ(line, "# config_sha256=abc123");
  std::getline(in, line);
  EXPECT_EQ(line, "# seed=42");
  std::getline(in, line);
  std::getline(in, line);
  EXPECT_EQ(line, "row,\"cx/(0,1): CX\",\"cx/(0,1): CX/sigma\"");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("1 - mu(I),0.03", 0), 0u) << line;
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, static_cast<int>(exact(p).tables[0].table.rows.size()));
  EXPECT_NE(csv.find("\"{IZ, ZZ}\",0.03,0"), std::string::npos);
}

TEST(CerJson, StampAndNulls) {
  auto r = exact(PauliDistribution::identity(2));
  r.tables[0].status = "failed: test";
  r.tables[0].table.rows[1].mu = NAN;
  ReportHeader h{"ff", 9};
  auto j = cer_to_json({r}, h);
  EXPECT_EQ(j["schema"], kCerSchema);
  EXPECT_EQ(j["config_sha256"], "ff");
  EXPECT_EQ(j["seed"], 9);
  EXPECT_EQ(j["status"], "partial");
  EXPECT_TRUE(j["cycles"][0]["tables"][0]["rows"][1]["mu"].is_null());
  EXPECT_TRUE(j["cycles"][0]["reduced_model"].is_null());
  EXPECT_EQ(dump_json(j), dump_json(cer_to_json({r}, h)));

  auto ok = exact(PauliDistribution::identity(2));
  auto jo = cer_to_json({ok}, h);
  EXPECT_EQ(jo["status"], "ok");
  EXPECT_EQ(jo["cycles"][0]["tables"][0]["rows"][0]["label"], "II");
}
