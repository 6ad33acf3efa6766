#ifndef PRFAUTH_FIGURES_HPP
#define PRFAUTH_FIGURES_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prfauth/analytic.hpp"
#include "prfauth/output.hpp"
#include "prfauth/params.hpp"
#include "prfauth/random.hpp"
#include "prfauth/signalsim.hpp"

namespace prfauth {

enum class Figure {
  PmdNscer,        // exact blind-forger PMD (and PFA) over W
  Cn0VsW,          // minimal C/N0 over W per security level (CLT)
  HdscerPmdSnr,    // hard-decision forger PMD over adversary SNR, several W
  AdvSnrPfaY,      // breaking SNR and PFA over the decision threshold
  ValidateNscer,   // Monte Carlo vs exact, blind forger, W grid
  ValidateHdscer,  // Monte Carlo vs exact, hard-decision forger, SNR grid
  Pscer,           // paired HDSCER vs PSCER simulation and the dB shift
};

std::optional<Figure> parse_figure(std::string_view name);
const char* figure_name(Figure figure);
bool figure_is_simulated(Figure figure);

/// Small radio used for the simulated figures: 31 chips, 2 samples per chip,
/// and a C/N0 low enough that missed detections are observable.
RadioModel validation_radio(double cn0_dbhz);

struct FigureRequest {
  Figure figure = Figure::PmdNscer;
  RadioModel radio;
  double threshold = 0.5;
  std::vector<std::size_t> ws;
  std::vector<double> snr_db;
  std::vector<double> thresholds;
  std::vector<unsigned> bits;
  PmdMethod method = PmdMethod::Clt;  // hdscer-pmd-snr only
  std::uint64_t trials = 0;
  Seed seed{};
  bool paired = true;
  PscerWeighting weighting = PscerWeighting::Power;
  unsigned workers = 0;  // not recorded: outputs must not depend on it
};

/// Every field filled with the figure's defaults.
FigureRequest default_figure_request(Figure figure);

/// Computes the figure's data table. Throws InfeasibleError for degenerate
/// requests (e.g. a PSCER grid with no PMD = 0.5 crossing).
OutputRecord make_figure(const FigureRequest& request);

/// Records every RadioModel field and the derived sigma^2/P.
void record_radio(OutputRecord& record, const RadioModel& radio);

}  // namespace prfauth

#endif  // PRFAUTH_FIGURES_HPP
