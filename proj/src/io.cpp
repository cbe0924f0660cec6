#include "decon/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "decon/errors.hpp"

namespace decon {

using nlohmann::json;

json sequence_to_json(const WeightedSequence& a) {
  json j;
  j["dim"] = a.dim();
  j["offset"] = a.offset();
  j["shape"] = a.shape();
  std::vector<double> re(a.size()), im(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    re[i] = a.values()[i].real();
    im[i] = a.values()[i].imag();
  }
  j["re"] = re;
  j["im"] = im;
  return j;
}

WeightedSequence sequence_from_json(const json& j) {
  try {
    int dim = j.at("dim").get<int>();
    std::vector<long> offset = j.at("offset").get<std::vector<long>>();
    std::vector<size_t> shape = j.at("shape").get<std::vector<size_t>>();
    std::vector<double> re = j.at("re").get<std::vector<double>>();
    std::vector<double> im;
    if (j.contains("im"))
      im = j.at("im").get<std::vector<double>>();
    else
      im.assign(re.size(), 0.0);
    require(im.size() == re.size(), ErrorCode::validation,
            "re/im arrays must have equal length");
    std::vector<cplx> vals(re.size());
    for (size_t i = 0; i < re.size(); ++i) vals[i] = cplx(re[i], im[i]);
    return WeightedSequence(dim, std::move(offset), std::move(shape),
                            std::move(vals));
  } catch (const json::exception& e) {
    fail(ErrorCode::validation, std::string("bad sequence JSON: ") + e.what());
  }
}

WeightedSequence load_sequence(const std::string& path) {
  return sequence_from_json(load_json(path));
}

void save_sequence(const WeightedSequence& a, const std::string& path) {
  save_json(sequence_to_json(a), path);
}

Generator generator_from_json(const json& j) {
  try {
    std::string kind = j.at("kind").get<std::string>();
    double alpha = j.value("alpha", 2.0);
    if (kind == "bspline") return Generator::bspline(j.at("order").get<int>(), alpha);
    if (kind == "exp")
      return Generator::two_sided_exponential(j.at("rate").get<double>(), alpha);
    if (kind == "sampled")
      return Generator::user_sampled(j.at("x0").get<double>(),
                                     j.at("dx").get<double>(),
                                     j.at("values").get<std::vector<double>>(),
                                     alpha);
    fail(ErrorCode::validation, "unknown generator kind: " + kind);
  } catch (const json::exception& e) {
    fail(ErrorCode::validation, std::string("bad generator JSON: ") + e.what());
  }
}

Generator load_generator(const std::string& path) {
  return generator_from_json(load_json(path));
}

json report_to_json(const BoundReport& r) {
  json inputs = json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  return json{{"name", r.name},
              {"inputs", inputs},
              {"value", r.value},
              {"valid", r.valid}};
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  require(os.good(), ErrorCode::io, "cannot open for writing: " + path);
  os.precision(17);
  return os;
}

}  // namespace

void write_abs_profile_csv(const WeightedSequence& a, const std::string& path) {
  std::ofstream os = open_out(path);
  os << "k,abs\n";
  for (size_t i = 0; i < a.size(); ++i) {
    std::vector<long> k = a.point_at(i);
    for (size_t j = 0; j < k.size(); ++j) os << (j ? ";" : "") << k[j];
    os << "," << std::abs(a.values()[i]) << "\n";
  }
}

void write_symbol_csv(const SymbolGrid& grid, const std::string& path) {
  std::ofstream os = open_out(path);
  int n = grid.grid_size;
  if (grid.dim == 1) {
    os << "w,re,im,abs\n";
    for (int i = 0; i < n; ++i) {
      cplx v = grid.values[static_cast<size_t>(i)];
      os << static_cast<double>(i) / n << "," << v.real() << "," << v.imag()
         << "," << std::abs(v) << "\n";
    }
    return;
  }
  require(grid.dim == 2, ErrorCode::validation, "symbol CSV supports d <= 2");
  os << "w1,w2,re,im,abs\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx v = grid.values[static_cast<size_t>(i) * static_cast<size_t>(n) +
                           static_cast<size_t>(j)];
      os << static_cast<double>(i) / n << "," << static_cast<double>(j) / n
         << "," << v.real() << "," << v.imag() << "," << std::abs(v) << "\n";
    }
}

void write_samples_csv(const SampledFunction& f, const std::string& path) {
  std::ofstream os = open_out(path);
  os << "x,re,im\n";
  for (size_t i = 0; i < f.size(); ++i)
    os << f.x_at(i) << "," << f.v[i].real() << "," << f.v[i].imag() << "\n";
}

void write_series_csv(const std::vector<double>& values, const std::string& header,
                      const std::string& path) {
  std::ofstream os = open_out(path);
  os << "index," << header << "\n";
  for (size_t i = 0; i < values.size(); ++i) os << i << "," << values[i] << "\n";
}

std::vector<double> load_points_csv(const std::string& path) {
  std::ifstream is(path);
  require(is.good(), ErrorCode::io, "cannot open: " + path);
  std::vector<double> points;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    try {
      points.push_back(std::stod(line));
    } catch (const std::exception&) {
      fail(ErrorCode::io, "bad point line in " + path + ": " + line);
    }
  }
  return points;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os = open_out(path);
  os << content;
}

json load_json(const std::string& path) {
  std::ifstream is(path);
  require(is.good(), ErrorCode::io, "cannot open: " + path);
  try {
    json j;
    is >> j;
    return j;
  } catch (const json::exception& e) {
    fail(ErrorCode::io, "bad JSON in " + path + ": " + e.what());
  }
}

void save_json(const json& j, const std::string& path) {
  std::ofstream os = open_out(path);
  os << j.dump(2) << "\n";
}

}  // namespace decon
