#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The bidsel Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

// Canonical instance JSON:
//   {"n": int, "k": int, "weights": [..],
//    "distributions": [{"support": [..], "probs": [..]}, ..]}
// Numbers are written with 17 significant digits so doubles round-trip.

#include "bidsel/distributions.hpp"
#include "bidsel/error.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace bidsel {

namespace detail {

inline std::string FormatDouble(double value)
{
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

inline void AppendArray(std::string &out, std::span<double const> values)
{
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i)
  {
    if (i > 0)
    {
      out += ", ";
    }
    out += FormatDouble(values[i]);
  }
  out += ']';
}

inline std::string ReadFile(std::filesystem::path const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw IoError("cannot open " + path.string() + " for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad())
  {
    throw IoError("failed reading " + path.string());
  }
  return buffer.str();
}

inline void WriteFile(std::filesystem::path const &path, std::string const &content)
{
  if (path.has_parent_path())
  {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec)
    {
      throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
  {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << content;
  out.flush();
  if (!out)
  {
    throw IoError("failed writing " + path.string());
  }
}

}  // namespace detail

inline std::string instance_to_json(AuctionInstance const &instance)
{
  std::string out = "{\n";
  out += "  \"n\": " + std::to_string(instance.size()) + ",\n";
  out += "  \"k\": " + std::to_string(instance.capacity()) + ",\n";
  out += "  \"weights\": ";
  detail::AppendArray(out, instance.weights());
  out += ",\n  \"distributions\": [\n";
  auto const dists = instance.distributions();
  for (std::size_t i = 0; i < dists.size(); ++i)
  {
    out += "    {\"support\": ";
    detail::AppendArray(out, dists[i].support());
    out += ", \"probs\": ";
    detail::AppendArray(out, dists[i].probs());
    out += i + 1 < dists.size() ? "},\n" : "}\n";
  }
  out += "  ]\n}\n";
  return out;
}

inline AuctionInstance instance_from_json(std::string const &text)
{
  try
  {
    auto const  doc = nlohmann::json::parse(text);
    auto const  n   = doc.at("n").get<std::size_t>();
    auto const  k   = doc.at("k").get<std::size_t>();
    auto const &raw = doc.at("distributions");
    detail::Require(raw.is_array() && raw.size() == n, "distribution count does not match n");
    std::vector<DiscreteDistribution> dists;
    dists.reserve(n);
    for (auto const &entry : raw)
    {
      dists.emplace_back(entry.at("support").get<std::vector<double>>(),
                         entry.at("probs").get<std::vector<double>>());
    }
    return AuctionInstance(std::move(dists), doc.at("weights").get<std::vector<double>>(), k);
  }
  catch (nlohmann::json::exception const &e)
  {
    throw InvalidArgument(std::string("malformed instance JSON: ") + e.what());
  }
}

inline void write_instance(AuctionInstance const &instance, std::filesystem::path const &path)
{
  detail::WriteFile(path, instance_to_json(instance));
}

inline AuctionInstance read_instance(std::filesystem::path const &path)
{
  try
  {
    return instance_from_json(detail::ReadFile(path));
  }
  catch (InvalidArgument const &e)
  {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

}  // namespace bidsel
