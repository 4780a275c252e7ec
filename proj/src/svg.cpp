#include <algorithm>
#include <optional>
#include <sstream>

#include "oadlc/format.hpp"
#include "oadlc/pattern.hpp"

namespace oadlc {

namespace {

constexpr int kDecimals = 6;
constexpr const char* kRecordTag = "oadlc-design-record";

std::string num(double v) { return fmt::fixed(v, kDecimals); }

std::string points_attr(const std::vector<Point2>& pts) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    out += num(pts[i].x) + ',' + num(pts[i].y);
  }
  return out;
}

std::vector<Point2> parse_points(const std::string& attr) {
  std::vector<Point2> pts;
  std::istringstream in(attr);
  std::string pair;
  while (in >> pair) {
    const auto comma = pair.find(',');
    if (comma == std::string::npos) throw std::runtime_error("malformed point '" + pair + "'");
    pts.push_back({fmt::parse_double(pair.substr(0, comma)), fmt::parse_double(pair.substr(comma + 1))});
  }
  return pts;
}

std::string line_element(const Segment& s, const std::string& extra = {}) {
  return "<line x1=\"" + num(s.a.x) + "\" y1=\"" + num(s.a.y) + "\" x2=\"" + num(s.b.x) +
         "\" y2=\"" + num(s.b.y) + "\"" + extra + "/>";
}

// "--" may not appear inside an XML comment; it can only occur inside JSON strings,
// where an escaped hyphen is equivalent.
std::string comment_safe(std::string text) {
  std::string::size_type pos = 0;
  while ((pos = text.find("--", pos)) != std::string::npos) text.replace(pos + 1, 1, "\\u002d");
  return text;
}

void open_group(std::ostringstream& out, const char* cls, const char* stroke, const char* dash) {
  out << "  <g class=\"" << cls << "\" fill=\"none\" stroke=\"" << stroke
      << "\" stroke-width=\"0.1\"";
  if (dash) out << " stroke-dasharray=\"" << dash << "\"";
  out << ">\n";
}

// Element tags between [begin, end) of the document.
std::vector<std::string> elements(const std::string& doc, std::string::size_type begin,
                                  std::string::size_type end) {
  std::vector<std::string> out;
  auto pos = doc.find('<', begin);
  while (pos != std::string::npos && pos < end) {
    const auto close = doc.find('>', pos);
    if (close == std::string::npos || close > end) throw std::runtime_error("unterminated element");
    out.push_back(doc.substr(pos, close - pos + 1));
    pos = doc.find('<', close);
  }
  return out;
}

std::optional<std::string> attribute(const std::string& element, const std::string& name) {
  const std::string key = " " + name + "=\"";
  const auto at = element.find(key);
  if (at == std::string::npos) return std::nullopt;
  const auto begin = at + key.size();
  const auto end = element.find('"', begin);
  if (end == std::string::npos) throw std::runtime_error("unterminated attribute " + name);
  return element.substr(begin, end - begin);
}

}  // namespace

std::string write_svg(const FoldPattern& pattern) {
  const FoldPattern::Box box = pattern.cut_bounds();
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<!-- " << kRecordTag << "\n" << comment_safe(pattern.metadata.dump(2)) << "\n-->\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(box.width())
      << "mm\" height=\"" << num(box.height()) << "mm\" viewBox=\"" << num(box.min_x) << ' '
      << num(box.min_y) << ' ' << num(box.width()) << ' ' << num(box.height()) << "\">\n";

  open_group(out, "cut", "#000000", nullptr);
  out << "    <polygon points=\"" << points_attr(pattern.outline) << "\"/>\n";
  out << "  </g>\n";

  for (CreaseKind kind : {CreaseKind::Mountain, CreaseKind::Valley}) {
    const bool mountain = kind == CreaseKind::Mountain;
    open_group(out, mountain ? "mountain" : "valley", mountain ? "#ff0000" : "#0000ff",
               mountain ? "4 2" : "4 2 1 2");
    for (std::size_t i = 0; i < pattern.creases.size(); ++i) {
      const Crease& c = pattern.creases[i];
      if (c.kind != kind) continue;
      out << "    " << line_element(c.segment, " data-index=\"" + std::to_string(i) + "\"") << "\n";
    }
    out << "  </g>\n";
  }

  open_group(out, "tab-fold", "#00a000", "1 1");
  for (const Tab& tab : pattern.tabs)
    out << "    " << line_element(tab.fold, " data-tab=\"" + points_attr(tab.polygon) + "\"") << "\n";
  out << "  </g>\n";
  out << "</svg>\n";
  return out.str();
}

FoldPattern read_svg(const std::string& svg) {
  FoldPattern pat;

  const std::string open = std::string("<!-- ") + kRecordTag + "\n";
  const auto start = svg.find(open);
  if (start == std::string::npos) throw std::runtime_error("missing design record comment");
  const auto body = start + open.size();
  const auto end = svg.find("\n-->", body);
  if (end == std::string::npos) throw std::runtime_error("unterminated design record comment");
  pat.metadata = nlohmann::ordered_json::parse(svg.substr(body, end - body));

  std::vector<std::pair<std::size_t, Crease>> creases;
  std::string::size_type pos = end;
  while ((pos = svg.find("<g class=\"", pos)) != std::string::npos) {
    const auto cls_begin = pos + 10;
    const auto cls_end = svg.find('"', cls_begin);
    const auto content_begin = svg.find('>', cls_end);
    const auto content_end = svg.find("</g>", content_begin);
    if (cls_end == std::string::npos || content_begin == std::string::npos ||
        content_end == std::string::npos)
      throw std::runtime_error("malformed group");
    const std::string cls = svg.substr(cls_begin, cls_end - cls_begin);
    pos = content_end + 4;

    for (const std::string& el : elements(svg, content_begin, content_end)) {
      if (cls == "cut" && el.rfind("<polygon", 0) == 0) {
        pat.outline = parse_points(attribute(el, "points").value());
      } else if (el.rfind("<line", 0) == 0) {
        const Segment seg{
            {fmt::parse_double(attribute(el, "x1").value()), fmt::parse_double(attribute(el, "y1").value())},
            {fmt::parse_double(attribute(el, "x2").value()), fmt::parse_double(attribute(el, "y2").value())}};
        if (cls == "mountain" || cls == "valley") {
          const auto index = attribute(el, "data-index");
          if (!index) throw std::runtime_error("crease line without data-index");
          creases.emplace_back(std::stoul(*index), Crease{seg, cls == "mountain" ? CreaseKind::Mountain
                                                                                 : CreaseKind::Valley});
        } else if (cls == "tab-fold") {
          const auto tab = attribute(el, "data-tab");
          if (!tab) throw std::runtime_error("tab fold without data-tab");
          pat.tabs.push_back({parse_points(*tab), seg});
        }
      }
    }
  }
  std::sort(creases.begin(), creases.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [index, crease] : creases) pat.creases.push_back(crease);
  return pat;
}

std::string write_segments_csv(const FoldPattern& pattern) {
  std::ostringstream out;
  out << "x1,y1,x2,y2,class\n";
  auto row = [&](const Segment& s, const std::string& cls) {
    out << num(s.a.x) << ',' << num(s.a.y) << ',' << num(s.b.x) << ',' << num(s.b.y) << ',' << cls
        << '\n';
  };
  const auto& o = pattern.outline;
  for (std::size_t i = 0; i < o.size(); ++i) row({o[i], o[(i + 1) % o.size()]}, "cut");
  for (const Crease& c : pattern.creases) row(c.segment, to_string(c.kind));
  for (const Tab& t : pattern.tabs) row(t.fold, "tab-fold");
  return out.str();
}

}  // namespace oadlc
