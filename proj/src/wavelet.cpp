#include "tvlm/wavelet.hpp"

#include <cmath>

#include "tvlm/errors.hpp"

namespace tvlm {

namespace {

// Scaling filters for Daubechies orders 1..10, extremal phase, sum sqrt(2).
const double kDb1[] = {0.707106781186547524401, 0.707106781186547524401};
const double kDb2[] = {0.482962913144534143375, 0.836516303737807905575,
                       0.224143868042013381026, -0.129409522551260381174};
const double kDb3[] = {0.332670552950082615999, 0.806891509311092576494,
                       0.459877502118491570095, -0.135011020010254588696,
                       -0.0854412738820266616928, 0.0352262918857095366027};
const double kDb4[] = {0.230377813308896500863, 0.71484657055291564709,
                       0.630880767929858907882, -0.0279837694168598542114,
                       -0.18703481171909308408, 0.0308413818355607636272,
                       0.0328830116668851997354, -0.0105974017850690321049};
const double kDb5[] = {0.160102397974192914481, 0.60382926979718967054,
                       0.724308528437772927728, 0.138428145901320731505,
                       -0.242294887066382031863, -0.0322448695846383746485,
                       0.0775714938400457135231, -0.00624149021279827427419,
                       -0.0125807519990819994685, 0.003335725285473771278};
const double kDb6[] = {0.111540743350109463621, 0.494623890398453085677,
                       0.751133908021095350679, 0.315250351709197629086,
                       -0.226264693965439820076, -0.129766867567261935562,
                       0.0975016055873230491023, 0.0275228655303057286255,
                       -0.0315820393174860295651, 0.000553842201161496139252,
                       0.00477725751094551063964, -0.00107730108530847956485};
const double kDb7[] = {0.07785205408500917902, 0.396539319481917306539,
                       0.729132090846235119917, 0.469782287405193122472,
                       -0.143906003928564975405, -0.224036184993874982638,
                       0.0713092192668302647509, 0.0806126091510830719129,
                       -0.0380299369350144135796, -0.0165745416306668806541,
                       0.012550998556099840613, 0.000429577972921366521132,
                       -0.00180164070404749091527, 0.000353713799974520248446};
const double kDb8[] = {0.054415842243104009955, 0.312871590914299970659,
                       0.675630736297289806808, 0.585354683654206712771,
                       -0.0158291052563493056674, -0.284015542961546926516,
                       0.000472484573913282770361, 0.128747426620478458857,
                       -0.0173693010018075461696, -0.0440882539307947515068,
                       0.0139810279173982816487, 0.00874609404740577671638,
                       -0.00487035299345157431042, -0.000391740373376947046298,
                       0.00067544940645056936637, -0.000117476784124769533731};
const double kDb9[] = {0.0380779473638783465887, 0.243834674612590353732,
                       0.604823123690111111903, 0.657288078051300538078,
                       0.133197385825007576191, -0.293273783279174908806,
                       -0.0968407832229764605135, 0.148540749338106380135,
                       0.0307256814793333792123, -0.0676328290613299736756,
                       0.000250947114831451957587, 0.0223616621236790972054,
                       -0.00472320475775139727793, -0.0042815036824634298345,
                       0.00184764688305622647662, 0.000230385763523195967205,
                       -0.000251963188942710136975, 0.0000393473203162715994807};
const double kDb10[] = {0.0266700579005555535866, 0.188176800077691489021,
                        0.527201188931725586482, 0.688459039453603565742,
                        0.281172343660577460749, -0.249846424327315379416,
                        -0.195946274377377043504, 0.127369340335793260083,
                        0.0930573646035723511604, -0.0713941471663970871453,
                        -0.0294575368218758128583, 0.0332126740593410017398,
                        0.00360655356695616965542, -0.0107331754833305750443,
                        0.00139535174705290116579, 0.00199240529518505611716,
                        -0.000685856694959711626561, -0.000116466855129285450951,
                        0.0000935886703200695913341, -0.0000132642028945212448124};

struct Table {
  const double* taps;
  int len;
};
const Table kTables[] = {{kDb1, 2},  {kDb2, 4},  {kDb3, 6},  {kDb4, 8},
                         {kDb5, 10}, {kDb6, 12}, {kDb7, 14}, {kDb8, 16},
                         {kDb9, 18}, {kDb10, 20}};

// Decay exponents of |psi_hat|; the order-2 value is the one used throughout
// the analysis (1.34).
const double kAlpha[] = {1.0,    1.34,   1.636, 1.913, 2.176,
                         2.4322, 2.6817, 2.927, 3.168, 3.406};

std::vector<double> upsample(const std::vector<double>& f, std::int64_t factor) {
  std::vector<double> out((f.size() - 1) * factor + 1, 0.0);
  for (std::size_t n = 0; n < f.size(); ++n) out[n * factor] = f[n];
  return out;
}

std::vector<double> convolve(const std::vector<double>& a,
                             const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

std::vector<double> daubechies_lowpass(int order) {
  if (order < 1 || order > 10) {
    throw ConfigError("unsupported Daubechies order " + std::to_string(order) +
                      " (supported: 1..10)");
  }
  const Table& t = kTables[order - 1];
  return std::vector<double>(t.taps, t.taps + t.len);
}

double WaveletSpec::fourier_decay() const {
  if (order < 1 || order > 10) {
    throw ConfigError("unsupported Daubechies order " + std::to_string(order));
  }
  return kAlpha[order - 1];
}

void WaveletSpec::validate() const {
  if (order < 1 || order > 10) {
    throw ConfigError("unsupported Daubechies order " + std::to_string(order) +
                      " (supported: 1..10)");
  }
  if (diff_order < 0) throw ConfigError("differencing order p must be >= 0");
  if (diff_order > vanishing_moments()) {
    throw ConfigError("differencing order p = " + std::to_string(diff_order) +
                      " exceeds vanishing moments M = " +
                      std::to_string(vanishing_moments()));
  }
}

std::complex<double> ScaleFilter::transfer(double lambda) const {
  // sum_s taps[s] e^{i (s+1) lambda}, by incremental rotation
  const std::complex<double> rot(std::cos(lambda), std::sin(lambda));
  std::complex<double> e = rot;
  std::complex<double> acc(0.0, 0.0);
  for (double t : taps) {
    acc += t * e;
    e *= rot;
  }
  return acc;
}

WaveletBank::WaveletBank(WaveletSpec spec, int max_scale) : spec_(spec) {
  spec_.validate();
  if (max_scale < 1) throw ConfigError("max_scale must be >= 1");
  lowpass_ = daubechies_lowpass(spec_.order);
  const int L = static_cast<int>(lowpass_.size());
  highpass_.resize(L);
  for (int n = 0; n < L; ++n) {
    highpass_[n] = (n % 2 == 0 ? 1.0 : -1.0) * lowpass_[L - 1 - n];
  }
  double num = 0.0, den = 0.0;
  for (int n = 0; n < L; ++n) {
    num += n * lowpass_[n];
    den += lowpass_[n];
  }
  mean_delay_ = num / den;

  // f_j = up(g, 2^{j-1}) * up(h, 2^{j-2}) * ... * up(h, 2) * h
  filters_.reserve(max_scale);
  std::vector<double> lowchain;  // up(h,2^{j-2})*...*h after j-1 stages
  for (int j = 1; j <= max_scale; ++j) {
    ScaleFilter f;
    f.scale = j;
    if (j == 1) {
      f.taps = highpass_;
      lowchain = lowpass_;
    } else {
      f.taps = convolve(upsample(highpass_, std::int64_t{1} << (j - 1)), lowchain);
      if (j < max_scale) {
        lowchain = convolve(upsample(lowpass_, std::int64_t{1} << (j - 1)), lowchain);
      }
    }
    filters_.push_back(std::move(f));
  }
}

const ScaleFilter& WaveletBank::filter(int j) const {
  if (j < 1 || j > max_scale()) {
    throw ConfigError("scale index " + std::to_string(j) +
                      " outside bank range 1.." + std::to_string(max_scale()));
  }
  return filters_[j - 1];
}

std::int64_t WaveletBank::coeff_count(std::int64_t T, int j) const {
  const std::int64_t S = filter(j).support_length();
  if (T < S) return 0;
  return (T - S) / (std::int64_t{1} << j) + 1;
}

int WaveletBank::max_feasible_scale(std::int64_t T) const {
  // support at scale j is (2^j - 1)(L0 - 1) + 1 regardless of bank depth
  const std::int64_t L0 = base_length();
  int jmax = 0;
  for (int j = 1; j < 62; ++j) {
    const std::int64_t S = ((std::int64_t{1} << j) - 1) * (L0 - 1) + 1;
    if (S > T) break;
    jmax = j;
  }
  return jmax;
}

std::complex<double> WaveletBank::symbol(const std::vector<double>& taps,
                                         double lambda) const {
  const std::complex<double> rot(std::cos(lambda), -std::sin(lambda));
  std::complex<double> e(1.0, 0.0);
  std::complex<double> acc(0.0, 0.0);
  for (double t : taps) {
    acc += t * e;
    e *= rot;
  }
  return acc * M_SQRT1_2;
}

std::complex<double> WaveletBank::psi_hat(double xi) const {
  // psi_hat(xi) = m1(xi/2) * prod_{k>=2} m0(xi/2^k)
  std::complex<double> acc = symbol(highpass_, 0.5 * xi);
  double arg = 0.5 * xi;
  for (int k = 1; k < product_depth_; ++k) {
    arg *= 0.5;
    acc *= symbol(lowpass_, arg);
  }
  // remaining factors: linear-phase tail exp(-i * mu * arg)
  const double tail = mean_delay_ * arg;
  acc *= std::complex<double>(std::cos(tail), -std::sin(tail));
  return acc;
}

double WaveletBank::psi_hat_sq(double xi) const {
  return std::norm(psi_hat(xi));
}

WaveletBank build_bank(const WaveletSpec& spec, int max_scale) {
  return WaveletBank(spec, max_scale);
}

}  // namespace tvlm
