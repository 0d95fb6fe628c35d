#include "wfdb.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace ecgkit {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

[[noreturn]] void header_error(const std::filesystem::path& path,
                               const std::string& line,
                               const std::string& what) {
  fail(ErrorKind::data, "malformed WFDB header " + path.string() + ": " +
                            what + " in line '" + line + "'");
}

}  // namespace

WfdbHeader parse_wfdb_header(const std::filesystem::path& header_path) {
  std::ifstream in(header_path);
  if (!in) fail(ErrorKind::io, "cannot open header " + header_path.string());

  WfdbHeader header;
  std::string line;
  bool have_record_line = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> tok = split_ws(line);

    if (!have_record_line) {
      if (tok.size() < 4) header_error(header_path, line, "expected 'name nsig fs nsamples'");
      header.record_name = tok[0];
      try {
        header.num_signals = std::stoi(tok[1]);
        // fs may carry a counter spec after '/'
        header.sampling_rate = std::stod(tok[2].substr(0, tok[2].find('/')));
        header.num_samples = static_cast<size_t>(std::stoull(tok[3]));
      } catch (const std::exception&) {
        header_error(header_path, line, "unparseable record line field");
      }
      if (header.num_signals <= 0 || header.sampling_rate <= 0.0 ||
          header.num_samples == 0)
        header_error(header_path, line, "nonpositive record dimensions");
      have_record_line = true;
      continue;
    }

    if (static_cast<int>(header.signals.size()) >= header.num_signals) break;

    if (tok.size() < 4) header_error(header_path, line, "short signal line");
    WfdbSignalSpec spec;
    spec.file_name = tok[0];
    if (tok[1] != "16")
      fail(ErrorKind::data, "unsupported WFDB signal format '" + tok[1] +
                                "' in " + header_path.string() +
                                " (only plain format 16 is supported)");
    // gain token: gain(baseline)/units, baseline and units optional
    {
      std::string g = tok[2];
      const size_t slash = g.find('/');
      if (slash != std::string::npos) g = g.substr(0, slash);
      const size_t open = g.find('(');
      bool have_baseline = false;
      if (open != std::string::npos) {
        const size_t close = g.find(')', open);
        if (close == std::string::npos)
          header_error(header_path, line, "unbalanced baseline parentheses");
        try {
          spec.baseline = std::stoi(g.substr(open + 1, close - open - 1));
        } catch (const std::exception&) {
          header_error(header_path, line, "unparseable baseline");
        }
        have_baseline = true;
        g = g.substr(0, open);
      }
      try {
        spec.gain = g.empty() ? 200.0 : std::stod(g);
      } catch (const std::exception&) {
        header_error(header_path, line, "unparseable gain");
      }
      if (spec.gain == 0.0) spec.gain = 200.0;  // WFDB default for gain 0
      if (tok.size() > 4) {
        try {
          spec.adc_resolution = std::stoi(tok[3]);
          spec.adc_zero = std::stoi(tok[4]);
        } catch (const std::exception&) {
          header_error(header_path, line, "unparseable ADC fields");
        }
        if (!have_baseline) spec.baseline = spec.adc_zero;
      }
      if (tok.size() > 5) spec.initial_value = std::atoi(tok[5].c_str());
      if (tok.size() > 6) spec.checksum = std::atoi(tok[6].c_str());
      if (tok.size() > 8) {
        std::string desc = tok[8];
        for (size_t i = 9; i < tok.size(); ++i) desc += " " + tok[i];
        spec.description = desc;
      } else {
        spec.description = "ch" + std::to_string(header.signals.size());
      }
    }
    header.signals.push_back(std::move(spec));
  }

  if (!have_record_line)
    fail(ErrorKind::data, "empty WFDB header " + header_path.string());
  if (static_cast<int>(header.signals.size()) != header.num_signals)
    fail(ErrorKind::data,
         "WFDB header " + header_path.string() + " declares " +
             std::to_string(header.num_signals) + " signals but lists " +
             std::to_string(header.signals.size()));
  return header;
}

EcgRecord read_wfdb_record(const std::filesystem::path& header_path) {
  const WfdbHeader header = parse_wfdb_header(header_path);

  for (const auto& spec : header.signals)
    if (spec.file_name != header.signals.front().file_name)
      fail(ErrorKind::data,
           "multi-file WFDB records are not supported: " + header_path.string());

  const std::filesystem::path dat_path =
      header_path.parent_path() / header.signals.front().file_name;
  std::ifstream dat(dat_path, std::ios::binary);
  if (!dat) fail(ErrorKind::io, "cannot open signal file " + dat_path.string());

  std::vector<char> bytes((std::istreambuf_iterator<char>(dat)),
                          std::istreambuf_iterator<char>());
  const size_t nsig = header.signals.size();
  const size_t expected = 2 * nsig * header.num_samples;
  if (bytes.size() != expected)
    fail(ErrorKind::data, "signal file length mismatch for " +
                              dat_path.string() + ": expected " +
                              std::to_string(expected) + " bytes, found " +
                              std::to_string(bytes.size()));

  EcgRecord rec;
  rec.record_id = header.record_name;
  rec.sampling_rate = header.sampling_rate;
  rec.lead_names.reserve(nsig);
  rec.leads.assign(nsig, std::vector<double>(header.num_samples));
  for (const auto& spec : header.signals) rec.lead_names.push_back(spec.description);

  // Explicit little-endian assembly keeps decoding host-endianness free.
  for (size_t t = 0; t < header.num_samples; ++t) {
    for (size_t s = 0; s < nsig; ++s) {
      const size_t off = 2 * (t * nsig + s);
      const auto lo = static_cast<uint8_t>(bytes[off]);
      const auto hi = static_cast<uint8_t>(bytes[off + 1]);
      const auto raw = static_cast<int16_t>(
          static_cast<uint16_t>(lo) | (static_cast<uint16_t>(hi) << 8));
      const WfdbSignalSpec& spec = header.signals[s];
      rec.leads[s][t] =
          (static_cast<double>(raw) - static_cast<double>(spec.baseline)) /
          spec.gain;
    }
  }
  return rec;
}

void write_wfdb_record(const std::filesystem::path& header_path,
                       const std::string& record_name,
                       const std::vector<std::string>& lead_names,
                       const std::vector<std::vector<int16_t>>& adc_samples,
                       double sampling_rate, double gain, int baseline) {
  if (lead_names.empty() || lead_names.size() != adc_samples.size())
    fail(ErrorKind::argument, "write_wfdb_record: lead mismatch");
  const size_t n = adc_samples.front().size();
  for (const auto& lead : adc_samples)
    if (lead.size() != n)
      fail(ErrorKind::argument, "write_wfdb_record: unequal lead lengths");

  const std::string dat_name = record_name + ".dat";
  std::ofstream hea(header_path);
  if (!hea) fail(ErrorKind::io, "cannot write " + header_path.string());
  hea << record_name << ' ' << lead_names.size() << ' ' << sampling_rate << ' '
      << n << '\n';
  for (size_t s = 0; s < lead_names.size(); ++s) {
    int32_t checksum = 0;
    for (int16_t v : adc_samples[s]) checksum += v;
    checksum = static_cast<int16_t>(checksum & 0xffff);
    hea << dat_name << " 16 " << gain << '(' << baseline << ")/mV 16 "
        << baseline << ' ' << adc_samples[s].front() << ' ' << checksum
        << " 0 " << lead_names[s] << '\n';
  }
  hea.close();

  std::ofstream dat(header_path.parent_path() / dat_name, std::ios::binary);
  if (!dat) fail(ErrorKind::io, "cannot write signal file for " + record_name);
  for (size_t t = 0; t < n; ++t) {
    for (size_t s = 0; s < lead_names.size(); ++s) {
      const auto v = static_cast<uint16_t>(adc_samples[s][t]);
      const char bytes[2] = {static_cast<char>(v & 0xff),
                             static_cast<char>((v >> 8) & 0xff)};
      dat.write(bytes, 2);
    }
  }
}

EcgRecord read_csv_record(const std::filesystem::path& csv_path,
                          double sampling_rate) {
  std::ifstream in(csv_path);
  if (!in) fail(ErrorKind::io, "cannot open " + csv_path.string());

  EcgRecord rec;
  rec.record_id = csv_path.stem().string();
  rec.sampling_rate = sampling_rate;

  std::string line;
  if (!std::getline(in, line))
    fail(ErrorKind::data, "empty record file " + csv_path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::istringstream head(line);
  std::string name;
  while (std::getline(head, name, ',')) rec.lead_names.push_back(name);
  if (rec.lead_names.empty())
    fail(ErrorKind::data, "no lead names in " + csv_path.string());
  rec.leads.assign(rec.lead_names.size(), {});

  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    size_t col = 0;
    while (std::getline(row, cell, ',')) {
      if (col >= rec.leads.size())
        fail(ErrorKind::data, csv_path.string() + ": too many columns at line " +
                                  std::to_string(line_no));
      try {
        rec.leads[col].push_back(std::stod(cell));
      } catch (const std::exception&) {
        fail(ErrorKind::data, csv_path.string() + ": bad sample at line " +
                                  std::to_string(line_no));
      }
      ++col;
    }
    if (col != rec.leads.size())
      fail(ErrorKind::data, csv_path.string() + ": short row at line " +
                                std::to_string(line_no));
  }
  return rec;
}

void write_csv_record(const std::filesystem::path& csv_path,
                      const std::vector<std::string>& lead_names,
                      const std::vector<std::vector<double>>& leads) {
  if (lead_names.empty() || lead_names.size() != leads.size())
    fail(ErrorKind::argument, "write_csv_record: lead mismatch");
  std::ofstream out(csv_path);
  if (!out) fail(ErrorKind::io, "cannot write " + csv_path.string());
  for (size_t i = 0; i < lead_names.size(); ++i)
    out << (i ? "," : "") << lead_names[i];
  out << '\n';
  const size_t n = leads.front().size();
  char buf[64];
  for (size_t t = 0; t < n; ++t) {
    for (size_t s = 0; s < leads.size(); ++s) {
      std::snprintf(buf, sizeof buf, "%.17g", leads[s][t]);
      out << (s ? "," : "") << buf;
    }
    out << '\n';
  }
}

}  // namespace ecgkit
