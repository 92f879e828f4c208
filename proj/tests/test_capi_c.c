/* Pure C consumer of the shared-library interface. */
#include <assert.h>
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "diracphase.h"

int main(void) {
  const char* text =
      "field = uniform-asym\n"
      "noise = wiener\n"
      "Bx = 1\nBy = 1\n"
      "T = 1\n"
      "steps = 50\n"
      "samples = 200\n"
      "seed = 3\n";

  dp_config* config = NULL;
  char err[256];
  err[0] = '\0';
  dp_status status = dp_config_parse(text, &config, err, sizeof err);
  if (status != DP_OK) {
    fprintf(stderr, "parse failed: %s (%s)\n", dp_status_name(status), err);
    return 1;
  }
  assert(dp_config_samples(config) == 200);

  dp_ensemble* ensemble = NULL;
  status = dp_run(config, 0, &ensemble, err, sizeof err);
  if (status != DP_OK) {
    fprintf(stderr, "run failed: %s (%s)\n", dp_status_name(status), err);
    return 1;
  }
  assert(dp_ensemble_accepted(ensemble) == 200);

  dp_moments moments;
  status = dp_ensemble_moments(ensemble, &moments);
  assert(status == DP_OK);
  assert(moments.variance > 0.0);
  assert(isfinite(moments.mean));

  uint64_t index = 999;
  double phase = 0.0;
  assert(dp_ensemble_sample(ensemble, 5, &index, &phase) == DP_OK);
  assert(index == 5);
  assert(isfinite(phase));

  assert(dp_ensemble_sample(ensemble, 100000, &index, &phase) == DP_ERROR_INVALID_ARGUMENT);
  assert(strcmp(dp_status_name(DP_OK), "ok") == 0);

  dp_ensemble_free(ensemble);
  dp_config_free(config);
  printf("c api smoke test passed\n");
  return 0;
}
