#include "cavmem/presets.hpp"

namespace cavmem {

const std::vector<Preset>& preset_catalog() {
    static const std::vector<Preset> catalog = [] {
        std::vector<Preset> v;

        Preset fig5_onoff;
        fig5_onoff.name = "fig5-onoff";
        fig5_onoff.title = "on-off operating-principle point";
        fig5_onoff.delta = 100.0;
        fig5_onoff.gamma = 1.0;
        fig5_onoff.kappa_j = 0.0;
        fig5_onoff.sigma = 1.0;
        fig5_onoff.c_min = fig5_onoff.c_max = 10.0;
        fig5_onoff.c_fixed = 10.0;
        fig5_onoff.scheme = Scheme::OnOff;
        fig5_onoff.provenance = "delta=100k, sigma=k, gamma=k, kappa_j=0, C=10";
        v.push_back(fig5_onoff);

        Preset fig5_pp;
        fig5_pp.name = "fig5-pushpull";
        fig5_pp.title = "push-pull operating-principle point";
        fig5_pp.delta = 100.0;
        fig5_pp.gamma = 1.0;
        fig5_pp.kappa_j = 0.0;
        fig5_pp.sigma = 1.0;
        fig5_pp.c_min = fig5_pp.c_max = 50.01;
        fig5_pp.c_at_pi = true;
        fig5_pp.scheme = Scheme::PushPull;
        fig5_pp.provenance = "delta=100k, sigma=k, gamma=k, kappa_j=0, C=C_pi=50.01";
        v.push_back(fig5_pp);

        Preset fig6;
        fig6.name = "fig6";
        fig6.title = "fidelity/herald trajectories, moderate level separation";
        fig6.delta = 10.0;
        fig6.gamma = 0.1;
        fig6.kappa_j = 0.0;
        fig6.sigma = 0.1;
        fig6.c_min = 5.0;
        fig6.c_max = 80.0;
        fig6.provenance =
            "delta=10k, sigma=k/10, gamma=k/10; the source figure shows four kappa_j panels "
            "without listing the values, so kappa_j defaults to 0 and is an override";
        v.push_back(fig6);

        Preset fig7a;
        fig7a.name = "fig7a";
        fig7a.title = "reduced level separation, C_pi = 25";
        fig7a.delta = 5.0;
        fig7a.gamma = 0.1;
        fig7a.kappa_j = 0.003;
        fig7a.sigma = 0.1;
        fig7a.c_min = 5.0;
        fig7a.c_max = 80.0;
        fig7a.provenance =
            "sigma=k/10, gamma=k/10, kappa_j=0.003k (caption value; body text says 0.03k); "
            "delta=5k back-solved from the quoted C_pi=25";
        v.push_back(fig7a);

        Preset fig7b;
        fig7b.name = "fig7b";
        fig7b.title = "reduced level separation, C_pi = 10";
        fig7b.delta = 2.0;
        fig7b.gamma = 0.1;
        fig7b.kappa_j = 0.003;
        fig7b.sigma = 0.1;
        fig7b.c_min = 5.0;
        fig7b.c_max = 80.0;
        fig7b.provenance =
            "sigma=k/10, gamma=k/10, kappa_j=0.003k (caption value; body text says 0.03k); "
            "delta=2k back-solved from the quoted C_pi=10.0";
        v.push_back(fig7b);

        Preset fig8a;
        fig8a.name = "fig8a";
        fig8a.title = "SiV nanocavity";
        fig8a.delta = 0.0043;
        fig8a.gamma = 0.00083;
        fig8a.kappa_j = 0.23;
        fig8a.sigma = 1.0 / 2000.0;
        fig8a.c_min = 0.5;
        fig8a.c_max = 8.0;
        fig8a.provenance =
            "delta=0.0043k, gamma=0.00083k, kappa_j=0.23k, sigma=k/2000; C varies 0.5..8, "
            "C_pi=2.48";
        v.push_back(fig8a);

        Preset fig8b;
        fig8b.name = "fig8b";
        fig8b.title = "SiV nanocavity, cavity loss reduced tenfold";
        fig8b.delta = 0.0043;
        fig8b.gamma = 0.00083;
        fig8b.kappa_j = 0.023;
        fig8b.sigma = 1.0 / 2000.0;
        fig8b.c_min = 0.5;
        fig8b.c_max = 8.0;
        fig8b.provenance =
            "same as fig8a with kappa_j=0.023k; C varies 0.5..8, C_pi=2.75";
        v.push_back(fig8b);

        Preset fig9;
        fig9.name = "fig9";
        fig9.title = "low-loss SiV bandwidth scan";
        fig9.delta = 0.0043;
        fig9.gamma = 0.00083;
        fig9.kappa_j = 0.023;
        fig9.sigma = 1.0 / 2000.0;
        fig9.c_min = 0.5;
        fig9.c_max = 8.0;
        fig9.c_at_pi = true;
        fig9.scheme = Scheme::PushPull;
        fig9.sigma_list = {1.0 / 500.0, 1.0 / 200.0, 1.0 / 100.0, 1.0 / 50.0, 1.0 / 30.0};
        fig9.provenance =
            "low-loss SiV parameters (kappa_j=0.023k) at C=C_pi; photon bandwidth varied "
            "k/500..k/30";
        v.push_back(fig9);

        Preset siv;
        siv.name = "siv";
        siv.title = "SiV nanocavity, quoted coupling";
        siv.delta = 0.0043;
        siv.gamma = 0.00083;
        siv.kappa_j = 0.23;
        siv.sigma = 1.0 / 2000.0;
        siv.c_min = 0.5;
        siv.c_max = 8.0;
        siv.g_fixed = 0.050;
        siv.provenance =
            "g/k=0.050 as quoted, which gives g^2/(k*gamma)=3.01; the source quotes C~13 for "
            "the same numbers; both recorded, not reconciled";
        v.push_back(siv);

        return v;
    }();
    return catalog;
}

const Preset* find_preset(const std::string& name) {
    for (const Preset& p : preset_catalog()) {
        if (p.name == name) return &p;
    }
    return nullptr;
}

}  // namespace cavmem
