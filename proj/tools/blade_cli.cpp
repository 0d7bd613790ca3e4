/*
Copyright 2026 The BLADE Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

// Command-line front end: table building, file coding, benchmark and
// redundancy analysis.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include <blade/blade.hpp>

namespace {

using namespace blade;

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error("failed writing '" + path + "'");
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& data) {
  write_file(path, std::string_view(reinterpret_cast<const char*>(data.data()), data.size()));
}

std::shared_ptr<const ContextSet> load_set(const std::string& path) {
  auto bytes = read_file(path);
  return std::make_shared<const ContextSet>(deserialize_set(std::string(bytes.begin(), bytes.end())));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block Huffman coding with enumerated weight classes"};
  app.require_subcommand(1);

  int bt_n = 0;
  std::string bt_out;
  auto* build = app.add_subcommand("build-tables", "Build the context tables for block length n");
  build->add_option("--n", bt_n, "Block length (even, 4..20)")->required();
  build->add_option("--out", bt_out, "Output table file")->required();

  std::string tables, in_path, out_path;
  auto* encode = app.add_subcommand("encode", "Encode a RAW file of packed n-bit blocks");
  encode->add_option("--tables", tables, "Table file")->required();
  encode->add_option("--in", in_path, "RAW input")->required();
  encode->add_option("--out", out_path, "Encoded output")->required();

  std::uint64_t blocks = 0;
  auto* decode = app.add_subcommand("decode", "Decode an encoded file back to RAW");
  decode->add_option("--tables", tables, "Table file")->required();
  decode->add_option("--in", in_path, "Encoded input")->required();
  decode->add_option("--blocks", blocks, "Number of blocks to decode")->required();
  decode->add_option("--out", out_path, "RAW output")->required();

  BenchConfig cfg;
  auto* bench = app.add_subcommand("bench", "Monte Carlo redundancy of the adaptive coder");
  bench->add_option("--n", cfg.n, "Block length")->required();
  bench->add_option("--p", cfg.p, "Probability of a one")->required();
  bench->add_option("--m", cfg.m, "Blocks per sequence (comma separated)")->delimiter(',')->required();
  bench->add_option("--q", cfg.Q, "Sequences per m")->capture_default_str();
  bench->add_option("--seed", cfg.seed, "Generator seed")->capture_default_str();
  bench->add_option("--out", cfg.output, "CSV output")->required();

  int an_n = 0, an_t = 0;
  std::vector<double> grid;
  std::string an_out;
  auto* analyze = app.add_subcommand("analyze", "Exact and asymptotic redundancy of sample-based codes");
  analyze->add_option("--n", an_n, "Block length (1..24)")->required();
  analyze->add_option("--t", an_t, "Sample length (>= 1)")->required();
  analyze->add_option("--p-grid", grid, "Source probabilities (comma separated)")->delimiter(',')->required();
  analyze->add_option("--out", an_out, "CSV output")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) {
      write_file(bt_out, serialize(build_context_set(bt_n)));
    } else if (*encode) {
      auto set = load_set(tables);
      auto raw = read_file(in_path);
      auto words = unpack_blocks(raw, set->n);
      BitStream bs;
      encode_adaptive(words, set, bs);
      write_file(out_path, encode_payload(bs));
      std::cerr << words.size() << " blocks, " << bs.bit_length() << " bits\n";
    } else if (*decode) {
      auto set = load_set(tables);
      auto payload = read_file(in_path);
      auto bs = decode_payload(payload);
      auto words = decode_adaptive(bs, set, blocks);
      write_file(out_path, pack_blocks(words, set->n));
    } else if (*bench) {
      auto records = run_benchmark(cfg);
      std::ostringstream csv;
      write_bench_csv(csv, records);
      write_file(cfg.output, csv.str());
    } else if (*analyze) {
      if (an_t < 1) throw ContractViolation("analyze: t must be at least 1");
      auto codes = build_sample_codes(an_n, an_t);
      std::vector<RedundancyReport> reports;
      for (double p : grid) reports.push_back(redundancy_report(an_n, an_t, p, codes));
      std::ostringstream csv;
      write_analysis_csv(csv, reports);
      write_file(an_out, csv.str());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
