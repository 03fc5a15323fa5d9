#ifndef CONFSURF_IO_HPP
#define CONFSURF_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "confsurf/dyachenko.hpp"
#include "confsurf/field.hpp"
#include "confsurf/ratfn.hpp"

namespace confsurf {
namespace io {

using json = nlohmann::json;

// Full-precision, locale-independent formatting (%.17g).
std::string fmt(double x);

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);

// {"constant":[re,im],"terms":[{"pole":[re,im],"order":m,"coeff":[re,im]}]}
json ratfn_to_json(const RationalFn& f);
RationalFn ratfn_from_json(const json& j);

void write_text(const std::filesystem::path& p, const std::string& text);
std::string read_text(const std::filesystem::path& p);

// Field dump: "u,re,im" rows; spectrum dump: "k,re,im" rows.
void write_field_csv(const std::filesystem::path& p, const ComplexField& f);
void write_spectrum_csv(const std::filesystem::path& p, const ComplexField& f);
ComplexField read_field_csv(const std::filesystem::path& p, const Grid& g);

void write_surface_csv(const std::filesystem::path& p, const SurfaceShape& s, double t);

std::string trajectory_jsonl(const Trajectory& traj);

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& p);

} // namespace io
} // namespace confsurf

#endif
