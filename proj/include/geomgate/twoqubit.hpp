// Copyright 2026 The geomgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <vector>

#include "geomgate/linalg.hpp"
#include "geomgate/pulses.hpp"

namespace geomgate {

/// Two anharmonic transmons truncated to 3 levels each; basis index 3*n1 + n2.
/// All frequencies are angular (rad/s), anharmonicities negative.
struct DeviceParams {
  double omega1 = 0, omega2 = 0;  // bare qubit frequencies
  double anh1 = 0, anh2 = 0;      // anharmonicities
  double g12 = 0;                 // transverse coupling
  int levels_per_qubit = 3;

  static DeviceParams defaults();
  void validate() const;
  /// Dispersive-regime guard: g12 / |omega1 - omega2| <= 0.1.
  bool dispersive_ok() const;
};

DeviceParams load_device_params(const std::string& path);
std::string serialize_device_params(const DeviceParams& p);

/// One constant-amplitude parametric modulation stretch of qubit 1:
/// omega_1(t) = omega1 + A sin(Delta t + phi).
struct DriveSegment {
  double amplitude = 0;  // A, rad/s
  double mod_freq = 0;   // Delta, rad/s; must be nonzero
  double phase = 0;      // phi, radians
  double duration = 0;   // seconds
  double compensated_phase = 0;  // effective-coupling phase this segment realizes
  double frame_phase = 0;        // phi': effective phase minus the drive phase
};

enum class TwoQubitGate { iSWAP, CZ };
enum class FrameKind { Rotating, Lab };
enum class HMethod { Analytic, FrameTransform };

inline const std::vector<int>& computational_indices();

/// Lab-frame Hamiltonian at time t inside the given segment (segment-local
/// clock; the modulation phase is absolute via Delta*t + phi).
Matrix lab_hamiltonian(const DeviceParams& params, const DriveSegment& drive, double t);

/// Accumulated modulation phase Phi(t) = integral of A sin(Delta t' + phi(t'))
/// across the segment list, continuous at boundaries.
double drive_phase_accum(const std::vector<DriveSegment>& drives, double t);

/// Diagonal rotating-frame transformation exp(-i integral H0).
UnitaryMatrix rotating_frame_unitary(const DeviceParams& params,
                                     const std::vector<DriveSegment>& drives, double t);

/// Rotating-frame Hamiltonian. Analytic = Jacobi-Anger Bessel expansion of
/// every coupled matrix element (throws CutoffTooLow when the |m|>cutoff tail
/// exceeds 1e-10); FrameTransform = U†HU - iU†U̇ with a centered finite
/// difference for U̇.
Matrix rotating_hamiltonian(const DeviceParams& params, const std::vector<DriveSegment>& drives,
                            double t, HMethod method, int cutoff = 20);

/// Modulation frequency putting the named transition on resonance.
double resonance_select(const DeviceParams& params, TwoQubitGate gate);

/// Bessel-sideband view of Eq.-(9)'s three transition families for one segment.
struct SidebandTerm {
  int m;
  cxd coefficient;      // includes i^m J_m, ladder factor, frame phase
  int from, to;         // basis indices of |to><from|
  double oscillation_freq;  // rad/s
};
struct SidebandExpansion {
  int order_cutoff;
  double bessel_argument;
  std::vector<SidebandTerm> terms;
};
SidebandExpansion sideband_expansion(const DeviceParams& params, const DriveSegment& drive,
                                     int cutoff = 20);

struct CompensationOptions {
  double drive_ratio = 0;        // operating point x0 = A/Delta; 0 = per-scheme default
  bool compensate = true;        // false: phi_m = target - pi/2 only (no history)
  double mod_freq_override = 0;  // nonzero: drive frequency instead of exact resonance
};

/// Calibrated operating points (flatness/fidelity scan with default device).
double default_drive_ratio(Scheme scheme, TwoQubitGate gate);

/// Maps a segmented single-qubit schedule onto parametric-drive segments whose
/// per-segment effective coupling matches amplitude and phase (root-finding on
/// g12 J1(A/Delta) and on the accumulated-phase equation).
std::vector<DriveSegment> compensate_schedule(const PulseSchedule& ideal,
                                              const DeviceParams& params, TwoQubitGate gate,
                                              const CompensationOptions& opts = {});

/// Effective resonant coupling coefficient of |10><01| (iSWAP) or
/// sqrt(2)|11><02| (CZ) during segment m, from the Appendix-C bookkeeping.
cxd effective_coupling(const DeviceParams& params, const std::vector<DriveSegment>& drives,
                       std::size_t m, TwoQubitGate gate);

/// Two equal-phase pi segments circling |11> through |02| (a 2pi circuit that
/// leaves the conditional pi on |11>), with virtual-Z cleanup downstream.
PulseSchedule cz_circuit_schedule();

/// iSWAP drive mapped from the named single-qubit scheme's X pulse.
std::vector<DriveSegment> build_iswap_drive(const DeviceParams& params, Scheme scheme,
                                            const CompensationOptions& opts = {});

/// CZ drive; when calibrate is set, the modulation frequency is root-solved so
/// the simulated conditional phase lands on pi (absorbing off-resonant Stark
/// contributions the bare resonance picks up).
std::vector<DriveSegment> build_cz_drive(const DeviceParams& params,
                                          const CompensationOptions& opts = {},
                                          bool calibrate = true);

struct TwoQubitResult {
  UnitaryMatrix final_unitary;  // rotating-frame unitary at tau
  long steps = 0;
  double max_unitarity_defect = 0;
  // population traces of the evolved initial basis state: t, then 9 columns
  std::vector<std::array<double, 10>> traces;
};

/// steps = 0 selects automatic step doubling until the final unitary moves
/// < 1e-7 (ConvergenceFailure if it never settles). Lab-frame runs are
/// conjugated back into the rotating frame at tau.
TwoQubitResult simulate_two_qubit(const DeviceParams& params,
                                  const std::vector<DriveSegment>& drives, FrameKind frame,
                                  long steps = 0, int initial_state = 1, int trace_samples = 0);

Matrix iswap_ideal_9();
Matrix cz_ideal_9();

/// Computational-subspace fidelity maximized over virtual single-qubit Z
/// rotations applied after the gate (free frame corrections).
double zcorrected_subspace_fidelity(const Matrix& u9, const Matrix& ideal9);

/// Conditional phase arg(U11) - arg(U10) - arg(U01) + arg(U00) of the
/// computational diagonal (invariant under single-qubit Z corrections).
double conditional_phase(const Matrix& u9);

struct DeltaASweepPoint {
  double delta_a;
  double fidelity;          // computational-subspace fidelity vs the ideal gate
  double equivalent_rabi_error;
};
std::vector<DeltaASweepPoint> delta_a_sweep(const DeviceParams& params,
                                            const std::vector<DriveSegment>& drives,
                                            const std::vector<double>& delta_a_grid,
                                            long steps = 0);

inline const std::vector<int>& computational_indices() {
  static const std::vector<int> idx{0, 1, 3, 4};
  return idx;
}

}  // namespace geomgate
