#include "dpl/profiles.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dpl/errors.hpp"

namespace dpl {

Profile Profile::constant(double c) {
  std::ostringstream os;
  os << "const(" << c << ")";
  return Profile(os.str(), [c](double) { return c; });
}

Profile Profile::gaussian(double center, double width, double amp) {
  if (!(width > 0.0)) throw ValidationError("gaussian width must be > 0");
  std::ostringstream os;
  os << "gaussian(" << center << "," << width << "," << amp << ")";
  return Profile(os.str(), [center, width, amp](double x) {
    const double z = (x - center) / width;
    return amp * std::exp(-0.5 * z * z);
  });
}

Profile Profile::step(double a, double b, double amp) {
  if (!(a < b)) throw ValidationError("step requires a < b");
  std::ostringstream os;
  os << "step(" << a << "," << b << "," << amp << ")";
  return Profile(os.str(),
                 [a, b, amp](double x) { return (x >= a && x <= b) ? amp : 0.0; });
}

Profile Profile::sine(double amp, double lo, double hi) {
  if (!(lo < hi)) throw ValidationError("sine profile needs a nonempty interval");
  std::ostringstream os;
  os << "sine(" << amp << ")";
  const double span = hi - lo;
  return Profile(os.str(), [amp, lo, span](double x) {
    return amp * std::sin(std::numbers::pi * (x - lo) / span);
  });
}

namespace {

std::string strip(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<double> parse_args(const std::string& inner, const std::string& ctx) {
  std::vector<double> args;
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = strip(item);
    try {
      std::size_t pos = 0;
      args.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("bad numeric argument '" + item + "' in " + ctx);
    }
  }
  return args;
}

}  // namespace

Profile Profile::parse(const std::string& text, double lo, double hi) {
  const std::string t = strip(text);
  if (t == "zero") return Profile::zero();

  const auto open = t.find('(');
  if (open == std::string::npos) {
    // bare number means a constant field
    try {
      std::size_t pos = 0;
      const double c = std::stod(t, &pos);
      if (pos == t.size()) return Profile::constant(c);
    } catch (const std::exception&) {
    }
    throw ValidationError("unknown profile '" + t + "'");
  }
  if (t.back() != ')')
    throw ValidationError("profile '" + t + "' missing closing ')'");

  const std::string name = strip(t.substr(0, open));
  const auto args = parse_args(t.substr(open + 1, t.size() - open - 2), t);

  auto want = [&](std::size_t n) {
    if (args.size() != n)
      throw ValidationError("profile '" + name + "' expects " +
                            std::to_string(n) + " argument(s)");
  };
  if (name == "const") {
    want(1);
    return Profile::constant(args[0]);
  }
  if (name == "gaussian") {
    want(3);
    return Profile::gaussian(args[0], args[1], args[2]);
  }
  if (name == "step") {
    want(3);
    return Profile::step(args[0], args[1], args[2]);
  }
  if (name == "sine") {
    want(1);
    return Profile::sine(args[0], lo, hi);
  }
  throw ValidationError("unknown profile '" + name + "'");
}

}  // namespace dpl
