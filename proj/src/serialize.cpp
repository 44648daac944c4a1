#include "wproj/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "wproj/error.hpp"

namespace wproj {

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const ComplexVec& x) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) out.push_back(to_json(x[i]));
  return out;
}

Json to_json(const ComplexMat& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const HomPoint& p) { return {{"v", to_json(p.v())}, {"w", to_json(p.w())}}; }

Json to_json(const ChartId& c) {
  return {{"atlas", c.atlas == Atlas::V ? "V" : "W"}, {"index", c.index}};
}

Json to_json(const ChartCoords& c) {
  return {{"chart", to_json(c.chart)}, {"u", to_json(c.u)}, {"fiber", to_json(c.fiber)}};
}

Json to_json(const TwoForm& omega, double drop_below) {
  Json basis = Json::array();
  for (int s = 0; s < omega.frame.size(); ++s) basis.push_back(omega.frame.label(s));
  Json coeff = Json::array();
  for (int mu = 0; mu < omega.frame.size(); ++mu) {
    for (int nu = mu + 1; nu < omega.frame.size(); ++nu) {
      const cplx c = omega(mu, nu);
      if (std::abs(c) > drop_below) coeff.push_back(Json::array({mu, nu, to_json(c)}));
    }
  }
  return {{"basis", basis}, {"coeff", coeff}};
}

cplx complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::InvalidArgument, "complex numbers are [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

ComplexVec vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidArgument, "expected an array of [re, im]");
  ComplexVec out(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) out[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
  return out;
}

ComplexMat matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw Error(ErrorCode::InvalidArgument, "expected a nested array matrix");
  }
  ComplexMat out(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(j[0].size()));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const ComplexVec row = vector_from_json(j[r]);
    if (row.size() != out.cols()) throw Error(ErrorCode::InvalidArgument, "ragged matrix");
    out.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return out;
}

HomPoint point_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("v") || !j.contains("w")) {
    throw Error(ErrorCode::InvalidArgument, "point needs \"v\" and \"w\"");
  }
  ComplexVec v = vector_from_json(j.at("v"));
  ComplexVec w = vector_from_json(j.at("w"));
  if (v.size() == 0 || w.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty factor");
  return HomPoint(std::move(v), std::move(w));
}

ChartId parse_chart_id(const std::string& text) {
  const auto colon = text.find(':');
  if (colon != 1 || (text[0] != 'V' && text[0] != 'W') || colon + 1 >= text.size()) {
    throw Error(ErrorCode::InvalidArgument, "chart ids look like V:0 or W:1");
  }
  const std::string digits = text.substr(colon + 1);
  for (char ch : digits) {
    if (ch < '0' || ch > '9') throw Error(ErrorCode::InvalidArgument, "bad chart index");
  }
  return {text[0] == 'V' ? Atlas::V : Atlas::W, std::stoi(digits)};
}

std::string format_chart_id(const ChartId& c) {
  return std::string(c.atlas == Atlas::V ? "V:" : "W:") + std::to_string(c.index);
}

ChartId chart_id_from_json(const Json& j) {
  if (j.is_string()) return parse_chart_id(j.get<std::string>());
  if (j.is_object() && j.contains("atlas") && j.contains("index")) {
    return parse_chart_id(j.at("atlas").get<std::string>() + ":" +
                          std::to_string(j.at("index").get<int>()));
  }
  throw Error(ErrorCode::InvalidArgument, "unrecognized chart id");
}

namespace {

void write_number(std::string& out, double x) {
  if (!std::isfinite(x)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

void write(std::string& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        write(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool block = false;
      for (const auto& el : j) block = block || (indent >= 0 && el.is_object());
      out += '[';
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += (indent < 0 || block) ? "," : ", ";
        first = false;
        if (block) {
          newline(depth + 1);
          write(out, el, indent, depth + 1);
        } else {
          write(out, el, -1, 0);
        }
      }
      if (block) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      write_number(out, j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_fixed(const Json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  return out;
}

}  // namespace wproj
