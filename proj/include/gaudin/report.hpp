#ifndef GAUDIN_REPORT_HPP
#define GAUDIN_REPORT_HPP

#include <string>

#include "gaudin/checks.hpp"

namespace gaudin {

struct RenderOptions {
  bool timing = true;  // false writes elapsed_ms as 0 for byte-stable output
  bool tables = true;
};

// {command, params, passed, reports: [{identity, window, slots, elapsed_ms, tables?}]}
std::string render_json(const std::string& command, const ModelParams& p, const ReportList& reports,
                        const RenderOptions& opts);
std::string render_text(const std::string& command, const ModelParams& p, const ReportList& reports,
                        const RenderOptions& opts);

}  // namespace gaudin

#endif  // GAUDIN_REPORT_HPP
