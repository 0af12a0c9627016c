#pragma once

namespace psr {

struct Config {
  long truncation = 0;    // 0: use max(p + 1, 2p) per expansion
  long hensel_depth = 0;  // 0: use the minimal Hensel modulus
};

// Defaults overridden by PADIC_SR_TRUNCATION and PADIC_SR_HENSEL_DEPTH.
const Config& default_config();

}  // namespace psr
