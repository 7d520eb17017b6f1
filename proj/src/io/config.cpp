#include "vmspod/io/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "vmspod/error.hpp"

namespace vmspod::io {

namespace pt = boost::property_tree;

namespace {

template <class T>
void read_field(const pt::ptree& tree, const std::string& key, T& field) {
  const auto node = tree.get_optional<std::string>(key);
  if (!node) return;
  std::istringstream in(*node);
  T value{};
  in >> value;
  require(!in.fail() && (in >> std::ws).eof(), ErrorKind::InvalidConfiguration,
          "field '" + key + "': cannot parse '" + *node + "'");
  field = value;
}

}  // namespace

void RunConfig::validate() const {
  const auto bad = [](const std::string& field, const std::string& why) {
    throw Error(ErrorKind::InvalidConfiguration, "field '" + field + "': " + why);
  };
  if (nx < 2) bad("discretization.nx", "must be >= 2");
  if (degree != 1 && degree != 2) bad("discretization.degree", "must be 1 or 2");
  if (!(dt > 0.0)) bad("discretization.dt", "must be positive");
  if (!(T > 0.0)) bad("problem.T", "must be positive");
  if (std::abs(dt * std::round(T / dt) - T) > 1e-12) bad("discretization.dt", "must divide T");
  if (!(epsilon >= 0.0)) bad("problem.epsilon", "must be non-negative");
  if (!(g > 0.0)) bad("problem.g", "must be positive (coercivity)");
  if (!(front_width > 0.0)) bad("problem.front_width", "must be positive");
  if (r < 1) bad("rom.r", "must be >= 1");
  if (R < 0 || R > r) bad("rom.R", "must satisfy 0 <= R <= r");
  if (alpha && !(*alpha >= 0.0)) bad("rom.alpha", "must be non-negative or 'auto'");
  if (!(rank_tolerance > 0.0 && rank_tolerance < 1.0))
    bad("pod.rank_tolerance", "must lie in (0, 1)");
}

experiments::StudyConfig RunConfig::study_config() const {
  experiments::StudyConfig s;
  s.nx = nx;
  s.degree = degree;
  s.problem.epsilon = epsilon;
  s.problem.b = b;
  s.problem.g = g;
  s.problem.T = T;
  s.problem.dt = dt;
  if (solution == SolutionKind::Zero)
    s.problem.exact = std::make_shared<ZeroSolution>();
  else
    s.problem.exact = std::make_shared<TanhFront>(front_width, 0.5);
  s.inner_product = inner_product;
  s.rank_tolerance = rank_tolerance;
  return s;
}

std::string RunConfig::alpha_text() const {
  if (!alpha) return "auto";
  std::ostringstream out;
  out << std::setprecision(17) << *alpha;
  return out.str();
}

RunConfig parse_config(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::InvalidConfiguration, e.what());
  }
  RunConfig c;
  read_field(tree, "problem.epsilon", c.epsilon);
  read_field(tree, "problem.b_x", c.b[0]);
  read_field(tree, "problem.b_y", c.b[1]);
  read_field(tree, "problem.g", c.g);
  read_field(tree, "problem.T", c.T);
  read_field(tree, "problem.front_width", c.front_width);
  if (const auto sol = tree.get_optional<std::string>("problem.solution")) {
    if (*sol == "tanh-front")
      c.solution = SolutionKind::TanhFront;
    else if (*sol == "zero")
      c.solution = SolutionKind::Zero;
    else
      throw Error(ErrorKind::InvalidConfiguration,
                  "field 'problem.solution': expected tanh-front or zero, got '" + *sol + "'");
  }
  read_field(tree, "discretization.nx", c.nx);
  read_field(tree, "discretization.degree", c.degree);
  read_field(tree, "discretization.dt", c.dt);
  read_field(tree, "rom.r", c.r);
  read_field(tree, "rom.R", c.R);
  if (const auto a = tree.get_optional<std::string>("rom.alpha")) {
    if (*a == "auto") {
      c.alpha.reset();
    } else {
      double v = 0.0;
      read_field(tree, "rom.alpha", v);
      c.alpha = v;
    }
  }
  if (const auto ip = tree.get_optional<std::string>("pod.inner_product"))
    c.inner_product = pod::parse_inner_product(*ip);
  read_field(tree, "pod.rank_tolerance", c.rank_tolerance);
  if (const auto dir = tree.get_optional<std::string>("output.directory")) c.output_dir = *dir;
  read_field(tree, "output.seed", c.seed);
  return c;
}

RunConfig read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::Io, "cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const RunConfig& c) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "[problem]\n"
      << "epsilon = " << c.epsilon << "\nb_x = " << c.b[0] << "\nb_y = " << c.b[1]
      << "\ng = " << c.g << "\nT = " << c.T << "\nfront_width = " << c.front_width
      << "\nsolution = " << (c.solution == SolutionKind::Zero ? "zero" : "tanh-front") << "\n\n"
      << "[discretization]\n"
      << "nx = " << c.nx << "\ndegree = " << c.degree << "\ndt = " << c.dt << "\n\n"
      << "[pod]\n"
      << "inner_product = " << pod::to_string(c.inner_product)
      << "\nrank_tolerance = " << c.rank_tolerance << "\n\n"
      << "[rom]\n"
      << "r = " << c.r << "\nR = " << c.R << "\nalpha = " << c.alpha_text() << "\n\n"
      << "[output]\n"
      << "directory = " << c.output_dir.string() << "\nseed = " << c.seed << "\n";
  return out.str();
}

void apply_environment(RunConfig& config) {
  if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0')
    config.output_dir = dir;
}

}  // namespace vmspod::io
