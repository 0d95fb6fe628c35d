#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "signal.hpp"

namespace ecgkit {

// Reader/writer for WFDB format-16 records: a text header (.hea) plus one
// binary signal file of 16-bit little-endian two's-complement samples,
// interleaved one sample per lead per frame. Physical units are
// (stored - baseline) / gain millivolts. Only single-file, plain format-16
// records are supported; anything else raises an unsupported-format error.

struct WfdbSignalSpec {
  std::string file_name;
  double gain = 200.0;  // ADC units per millivolt
  int baseline = 0;
  int adc_resolution = 16;
  int adc_zero = 0;
  int initial_value = 0;
  int checksum = 0;
  std::string description;  // lead name
};

struct WfdbHeader {
  std::string record_name;
  int num_signals = 0;
  double sampling_rate = 0.0;
  size_t num_samples = 0;
  std::vector<WfdbSignalSpec> signals;
};

WfdbHeader parse_wfdb_header(const std::filesystem::path& header_path);

// Reads header + signal file and converts to millivolts. Labels stay unset.
EcgRecord read_wfdb_record(const std::filesystem::path& header_path);

// Writes a header/signal pair. Samples are raw ADC integers per lead;
// checksums and initial values are computed. Used for fixtures and the
// round-trip tests.
void write_wfdb_record(const std::filesystem::path& header_path,
                       const std::string& record_name,
                       const std::vector<std::string>& lead_names,
                       const std::vector<std::vector<int16_t>>& adc_samples,
                       double sampling_rate, double gain, int baseline);

// Fallback reader: one column per lead, header row of lead names, values in
// millivolts. The sampling rate is not part of the format.
EcgRecord read_csv_record(const std::filesystem::path& csv_path,
                          double sampling_rate);

void write_csv_record(const std::filesystem::path& csv_path,
                      const std::vector<std::string>& lead_names,
                      const std::vector<std::vector<double>>& leads);

}  // namespace ecgkit
