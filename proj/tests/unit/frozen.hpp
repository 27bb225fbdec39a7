#pragma once

// Generated by tests/oracles/frozen_values.py.

namespace frozen {

struct AfCase { double theta_deg, phi_deg, kappa; int mx, my; double af_sq; };
inline constexpr AfCase af_cases[] = {
    {30, 0, 0.02, 100, 1, 0.5168304925380115},
    {30, 0, 0.02, 200, 1, 0.022553397840750614},
    {60, 0, 0.01, 64, 64, 0.9791264070632019},
    {10, 20, 0.05, 40, 30, 0.4430086869235838},
    {45, 70, -0.03, 25, 50, 0.8063165182831953},
    {90, 0, 0.05, 100, 100, 1.0},
};

struct CrlbCase { double theta_deg, snr_db; int n, md; double sigma; };
inline constexpr CrlbCase crlb_cases[] = {
    {30, -40, 64, 32, 0.053867021124529554},
    {30, 0, 64, 32, 0.0005386702112452956},
    {60, -20, 512, 8, 0.0031330684475282173},
};

struct BwCase { double h; int m, l; double t, g, hz; };
inline constexpr BwCase bw_cases[] = {
    {1.0, 2, 1, 1e-06, 1.0, 2000000.0},
    {0.5, 4, 2, 2e-06, 1.0, 645284.7075210474},
    {0.5, 2, 3, 1e-06, 1.5, 853553.3905932738},
    {0.25, 8, 1, 5e-07, 1.0, 4291287.84747792},
};

struct GaussCase { double bt; int l; double t, q; };
inline constexpr GaussCase gauss_cases[] = {
    {0.3, 3, 0.7, 0.0317926224180827},
    {0.3, 3, 1.5, 0.25000000000000006},
    {0.5, 2, 0.25, 0.01083246072191355},
    {0.25, 4, 3.1, 0.48320218172816665},
};

struct CsiCase { double theta_deg, kappa; int m; double sigma_deg, loss; };
inline constexpr CsiCase csi_cases[] = {
    {30, 0.01, 100, 0.1, 0.9937220869956279},
    {30, 0.02, 200, 0.05, 0.9936594718591742},
    {60, 0.0, 64, 0.3, 0.9361017459856552},
};

struct MuCase { double snr_d, tilde_u, mu; };
inline constexpr MuCase mu_cases[] = {
    {16.384, 2.048, 0.045265950054609656},
    {163.84, 20.48, 0.04591100026949988},
    {4.0, 1.0, 0.08657640956967652},
};

}  // namespace frozen
