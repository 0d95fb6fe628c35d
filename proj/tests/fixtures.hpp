// Synthetic PTB-XL-shaped datasets for the pipeline, CLI and acceptance
// tests: an index (metadata + statement dictionary) plus per-record signal
// files in either wfdb or csv form. Healthy records get clean, regular
// beats; diseased ones get irregular timing and heavier noise so the
// complexity features actually separate the classes.
#pragma once

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "wfdb.hpp"

namespace fixtures {

namespace fs = std::filesystem;

struct DatasetSpec {
  size_t n_records = 12;
  std::string format = "wfdb";  // or "csv"
  size_t n_samples = 1000;
  long corrupt_record = -1;  // 0-based position to corrupt, -1 = none
};

inline std::vector<std::vector<double>> synth_leads(uint64_t seed,
                                                    bool diseased,
                                                    size_t n_samples) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> noise(0.0, diseased ? 0.18 : 0.05);
  std::uniform_int_distribution<int> jitter(diseased ? -14 : -2,
                                            diseased ? 14 : 2);
  std::vector<std::vector<double>> leads(3,
                                         std::vector<double>(n_samples, 0.0));
  // common beat positions with per-record rhythm
  std::vector<size_t> beats;
  size_t pos = 10 + gen() % 8;
  while (pos < n_samples) {
    beats.push_back(pos);
    const long step = (diseased ? 72 : 84) + jitter(gen);
    pos += static_cast<size_t>(std::max<long>(30, step));
  }
  for (size_t lead = 0; lead < 3; ++lead) {
    auto& x = leads[lead];
    const double gain = 1.0 - 0.2 * static_cast<double>(lead);
    for (size_t b : beats) {
      // a narrow triangular spike, two samples wide
      x[b] += gain;
      if (b + 1 < n_samples) x[b + 1] += 0.4 * gain;
      if (b >= 1) x[b - 1] += 0.3 * gain;
    }
    const double freq = diseased ? 2.9 : 1.3;
    for (size_t i = 0; i < n_samples; ++i) {
      const double t = static_cast<double>(i) / 100.0;
      x[i] += 0.22 * gain * std::sin(2.0 * 3.14159265358979 * freq * t +
                                     0.7 * static_cast<double>(lead));
      x[i] += 0.0025 * static_cast<double>(i) / 10.0;  // slow drift
      x[i] += noise(gen);
    }
  }
  return leads;
}

// Class assignment mixes the index so it stays independent of the fold
// rotation; two slots of six are NORM, keeping the binary split balanced.
inline const char* scp_code_for(size_t i) {
  const uint64_t h = (i + 1) * 0x9e3779b97f4a7c15ull;
  switch ((h >> 24) % 6) {
    case 0:
    case 1: return "NORM";
    case 2: return "IMI";   // MI
    case 3: return "NDT";   // STTC
    case 4: return "LAFB";  // CD
    default: return "LVH";  // HYP
  }
}

inline void make_dataset(const fs::path& dir, const DatasetSpec& spec) {
  fs::create_directories(dir / "records");
  {
    std::ofstream out(dir / "scp_statements.csv");
    out << ",description,diagnostic,diagnostic_class\n"
           "NORM,normal ecg,1.0,NORM\n"
           "IMI,inferior myocardial infarction,1.0,MI\n"
           "NDT,non-diagnostic t wave,1.0,STTC\n"
           "LAFB,left anterior fascicular block,1.0,CD\n"
           "LVH,left ventricular hypertrophy,1.0,HYP\n"
           "SR,sinus rhythm,,\n";
  }
  std::ofstream meta(dir / "ptbxl_database.csv");
  meta << "ecg_id,age,sex,weight,scp_codes,strat_fold,filename_lr\n";
  for (size_t i = 0; i < spec.n_records; ++i) {
    const std::string id = std::to_string(i + 1);
    const char* code = scp_code_for(i);
    const bool diseased = std::string(code) != "NORM";
    const int fold = static_cast<int>(i % 10) + 1;
    const std::string rel = "records/rec" + id;

    meta << id << ',' << (35 + (i * 7) % 50) << ',' << (i % 2) << ','
         << (60 + (i * 3) % 40) << ",\"{'" << code << "': 100.0, 'SR': 0.0}\","
         << fold << ',' << rel << "\n";

    const bool corrupt = spec.corrupt_record == static_cast<long>(i);
    const std::vector<std::vector<double>> leads =
        synth_leads(1000 + i, diseased, spec.n_samples);
    if (spec.format == "wfdb") {
      std::vector<std::vector<int16_t>> adc(3);
      for (size_t lead = 0; lead < 3; ++lead)
        for (double v : leads[lead])
          adc[lead].push_back(static_cast<int16_t>(std::lround(v * 1000.0)));
      ecgkit::write_wfdb_record(dir / (rel + ".hea"), "rec" + id,
                                {"II", "AVL", "V2"}, adc, 100.0, 1000.0, 0);
      if (corrupt) {
        // truncate the signal file
        std::ofstream bad(dir / ("records/rec" + id + ".dat"),
                          std::ios::binary | std::ios::trunc);
        bad << "short";
      }
    } else {
      if (corrupt) {
        std::ofstream bad(dir / (rel + ".csv"));
        bad << "II,AVL,V2\nnot,a,number\n";
      } else {
        ecgkit::write_csv_record(dir / (rel + ".csv"), {"II", "AVL", "V2"},
                                 leads);
      }
    }
  }
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    static std::atomic<unsigned> counter{0};
    path = fs::temp_directory_path() /
           ("ecgkit_" + tag + "_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter.fetch_add(1)));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

}  // namespace fixtures
