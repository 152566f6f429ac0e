#pragma once

#include <exception>
#include <string>

#include "vlab/config.hpp"
#include "vlab/report.hpp"

namespace vlab {

/// Exit status contract of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitConfigError = 2, kExitNonconvergence = 3 };

/// Maps an exception escaping a command to its exit status.
int exit_code_for(std::exception_ptr error);

/// A function given either by id or by expression text; exactly one is set.
/// Ids are gallery ids or `fw:<re>,<im>` for the extremal kernel at that point.
struct FunctionArg {
  std::string id;
  std::string expr;
};

/// `field` names the flag in error messages.
HoloFun resolve_function(const FunctionArg& arg, const std::string& field);
Json describe(const FunctionArg& arg);

struct HardyArgs {
  FunctionArg function;
};

struct CriteriaArgs {
  FunctionArg symbol;
  std::string which = "both";
  bool vanishing = false;
};

struct ApplyArgs {
  std::string op;
  FunctionArg symbol;
  FunctionArg function;
  std::string z0 = "0,1";
  std::string z;
  /// "straight" or "two-leg".
  std::string path = "straight";
};

struct CertifyArgs {
  std::string op;
  FunctionArg symbol;
};

struct ProbeArgs {
  std::string op;
  FunctionArg symbol;
  double x_anchor = 0.0;
};

/// Bloch norm of the symbol itself, or of L f when `op` is set.
struct BlochArgs {
  FunctionArg symbol;
  std::string op;
  FunctionArg function;
  std::string z0 = "0,1";
};

struct StripDecayArgs {
  FunctionArg function;
  std::string strip = "0.5,2";
};

struct GrowthArgs {
  FunctionArg function;
  int order = 0;
};

struct VerifyArgs {
  /// Module name, or empty for every module.
  std::string filter;
  /// Record wall time; off by default so repeated runs are byte-identical.
  bool timing = false;
};

Report cmd_hardy_norm(const HardyArgs& args, const RunConfig& cfg);
Report cmd_criteria(const CriteriaArgs& args, const RunConfig& cfg);
Report cmd_apply(const ApplyArgs& args, const RunConfig& cfg);
Report cmd_certify(const CertifyArgs& args, const RunConfig& cfg);
Report cmd_probe(const ProbeArgs& args, const RunConfig& cfg);
Report cmd_bloch(const BlochArgs& args, const RunConfig& cfg);
Report cmd_strip_decay(const StripDecayArgs& args, const RunConfig& cfg);
Report cmd_growth(const GrowthArgs& args, const RunConfig& cfg);
Report cmd_gallery(const RunConfig& cfg);
/// results.failed counts failing checks; the tool exits 1 when it is nonzero.
Report cmd_verify(const VerifyArgs& args, const RunConfig& cfg);

}  // namespace vlab
