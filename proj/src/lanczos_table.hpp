// Generated by tools/gen_lanczos.py; do not edit by hand.
#pragma once

namespace lfd::detail {

inline constexpr double kLanczosG = 4.7421875;
inline constexpr int kLanczosTerms = 15;
inline constexpr double kLanczosCoeff[kLanczosTerms] = {
    0.9999999999999971,
    57.15623566586292,
    -59.59796035547549,
    14.136097974741746,
    -0.4919138160976202,
    3.399464998481189e-05,
    4.652362892704858e-05,
    -9.837447530487956e-05,
    0.0001580887032249125,
    -0.00021026444172410488,
    0.00021743961811521265,
    -0.0001643181065367639,
    8.441822398385275e-05,
    -2.6190838401581408e-05,
    3.6899182659531625e-06,
};

}  // namespace lfd::detail
