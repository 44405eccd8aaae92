#include "trsim/frames.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "trsim/errors.hpp"

namespace trsim::frames {

Numerology make_numerology(int mu) {
    if (mu < 0 || mu > kMaxMu) {
        detail::throw_domain(fmt::format("numerology mu={} outside [0, {}]", mu, kMaxMu));
    }
    Numerology n;
    n.mu = mu;
    n.slots_per_subframe = 1 << mu;
    n.subcarrier_spacing_khz = 15.0 * n.slots_per_subframe;
    return n;
}

char slot_code(SlotKind kind) noexcept {
    switch (kind) {
        case SlotKind::Downlink: return 'D';
        case SlotKind::Uplink: return 'U';
        case SlotKind::Guard: return 'G';
        case SlotKind::FreqSwitch0: return '0';
        case SlotKind::FreqSwitch1: return '1';
        case SlotKind::Hold: return 'H';
        case SlotKind::Release: return 'R';
    }
    return '?';
}

std::string_view to_string(SlotKind kind) noexcept {
    switch (kind) {
        case SlotKind::Downlink: return "Downlink";
        case SlotKind::Uplink: return "Uplink";
        case SlotKind::Guard: return "Guard";
        case SlotKind::FreqSwitch0: return "FreqSwitch0";
        case SlotKind::FreqSwitch1: return "FreqSwitch1";
        case SlotKind::Hold: return "Hold";
        case SlotKind::Release: return "Release";
    }
    return "?";
}

std::string_view to_string(Duplex duplex) noexcept {
    switch (duplex) {
        case Duplex::FddDownlink: return "fdd-dl";
        case Duplex::FddUplink: return "fdd-ul";
        case Duplex::Tdd: return "tdd";
    }
    return "?";
}

SlotKind RadioFrame::slot(int index) const {
    const int per = numerology.slots_per_subframe;
    const auto sf = static_cast<std::size_t>(index / per);
    const auto sl = static_cast<std::size_t>(index % per);
    if (index < 0 || sf >= subframes.size() || sl >= subframes[sf].size()) {
        detail::throw_domain(fmt::format("slot index {} outside frame", index));
    }
    return subframes[sf][sl];
}

FddPair build_fdd_pair(const Numerology& num, bool tr_active, int switch_subframe) {
    if (switch_subframe < 0 || switch_subframe >= kSubframesPerFrame) {
        detail::throw_domain(fmt::format("switch subframe {} outside frame", switch_subframe));
    }
    const auto per = static_cast<std::size_t>(num.slots_per_subframe);

    FddPair pair;
    pair.downlink.duplex = Duplex::FddDownlink;
    pair.downlink.numerology = num;
    pair.downlink.tr_active = tr_active;
    pair.downlink.subframes.assign(kSubframesPerFrame, Subframe(per, SlotKind::Downlink));

    pair.uplink.duplex = Duplex::FddUplink;
    pair.uplink.numerology = num;
    pair.uplink.tr_active = tr_active;
    const SlotKind data = tr_active ? SlotKind::Guard : SlotKind::Uplink;
    pair.uplink.subframes.assign(kSubframesPerFrame, Subframe(per, data));
    Subframe& sw = pair.uplink.subframes[static_cast<std::size_t>(switch_subframe)];
    std::fill(sw.begin(), sw.end(), SlotKind::Guard);
    sw.front() = tr_active ? SlotKind::FreqSwitch1 : SlotKind::FreqSwitch0;
    return pair;
}

std::vector<SubframeDirection> parse_tdd_pattern(std::string_view text) {
    std::vector<SubframeDirection> out;
    for (char c : text) {
        switch (c) {
            case 'D': out.push_back(SubframeDirection::Downlink); break;
            case 'U': out.push_back(SubframeDirection::Uplink); break;
            case 'S': out.push_back(SubframeDirection::Special); break;
            case '-': break;
            default:
                detail::throw_domain(fmt::format("invalid TDD pattern character '{}'", c));
        }
    }
    if (out.size() != kSubframesPerFrame) {
        detail::throw_domain(
            fmt::format("TDD pattern has {} subframes, expected {}", out.size(), kSubframesPerFrame));
    }
    return out;
}

std::string format_tdd_pattern(std::span<const SubframeDirection> pattern) {
    std::string s;
    for (auto d : pattern) {
        s += d == SubframeDirection::Downlink ? 'D' : d == SubframeDirection::Uplink ? 'U' : 'S';
    }
    return s;
}

Subframe special_subframe_layout(int slots) {
    const auto n = static_cast<std::size_t>(slots);
    if (n == 1) {
        return {SlotKind::Guard};
    }
    Subframe sf(n, SlotKind::Guard);
    std::fill_n(sf.begin(), n / 2, SlotKind::Downlink);
    if (n >= 4) {
        std::fill(sf.end() - static_cast<std::ptrdiff_t>(n / 4), sf.end(), SlotKind::Uplink);
    }
    return sf;
}

RadioFrame build_tdd_frame(const Numerology& num, std::span<const SubframeDirection> pattern,
                           bool tr_active, int superframe_subframe) {
    if (pattern.size() != kSubframesPerFrame) {
        detail::throw_domain(fmt::format("TDD pattern has {} subframes, expected {}",
                                         pattern.size(), kSubframesPerFrame));
    }
    if (superframe_subframe < 0 || superframe_subframe >= kSubframesPerFrame ||
        pattern[static_cast<std::size_t>(superframe_subframe)] != SubframeDirection::Special) {
        detail::throw_domain(fmt::format(
            "TDD pattern '{}' has no superframe marker (S) at subframe {}",
            format_tdd_pattern(pattern), superframe_subframe));
    }

    const auto per = static_cast<std::size_t>(num.slots_per_subframe);
    RadioFrame f;
    f.duplex = Duplex::Tdd;
    f.numerology = num;
    f.tr_active = tr_active;
    f.subframes.reserve(kSubframesPerFrame);
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        Subframe sf;
        if (static_cast<int>(i) == superframe_subframe) {
            sf.assign(per, SlotKind::Guard);
            sf.front() = tr_active ? SlotKind::Hold : SlotKind::Release;
        } else {
            switch (pattern[i]) {
                case SubframeDirection::Downlink: sf.assign(per, SlotKind::Downlink); break;
                case SubframeDirection::Uplink: sf.assign(per, SlotKind::Uplink); break;
                case SubframeDirection::Special: sf = special_subframe_layout(num.slots_per_subframe); break;
            }
        }
        if (tr_active) {
            std::replace(sf.begin(), sf.end(), SlotKind::Uplink, SlotKind::Guard);
        }
        f.subframes.push_back(std::move(sf));
    }
    return f;
}

std::string to_string(const Violation& v) {
    std::string s = v.invariant;
    if (v.subframe >= 0) {
        s += fmt::format(" subframe={}", v.subframe);
    }
    if (v.slot >= 0) {
        s += fmt::format(" slot={}", v.slot);
    }
    if (!v.detail.empty()) {
        s += ": " + v.detail;
    }
    return s;
}

std::vector<Violation> validate_frame(const RadioFrame& frame) {
    std::vector<Violation> out;
    auto report = [&out](std::string inv, int sf, int sl, std::string det) {
        out.push_back({std::move(inv), sf, sl, std::move(det)});
    };

    const Numerology& num = frame.numerology;
    bool numerology_ok = num.mu >= 0 && num.mu <= kMaxMu &&
                         num.slots_per_subframe == (1 << num.mu) &&
                         num.subcarrier_spacing_khz == 15.0 * (1 << num.mu);
    if (!numerology_ok) {
        report("numerology", -1, -1,
               fmt::format("mu={} spacing={} kHz slots/subframe={}", num.mu,
                           num.subcarrier_spacing_khz, num.slots_per_subframe));
    }

    if (frame.subframes.size() != kSubframesPerFrame) {
        report("subframe-count", -1, -1,
               fmt::format("{} subframes, expected {}", frame.subframes.size(), kSubframesPerFrame));
    }

    int freq_switch = 0;
    int hold = 0;
    int release = 0;
    std::vector<int> superframes;
    for (std::size_t i = 0; i < frame.subframes.size(); ++i) {
        const Subframe& sf = frame.subframes[i];
        const int sfi = static_cast<int>(i);
        if (numerology_ok && static_cast<int>(sf.size()) != num.slots_per_subframe) {
            report("slots-per-subframe", sfi, -1,
                   fmt::format("{} slots, expected {}", sf.size(), num.slots_per_subframe));
        }
        bool has_tr_slot = false;
        for (std::size_t j = 0; j < sf.size(); ++j) {
            const int sli = static_cast<int>(j);
            const SlotKind k = sf[j];
            if (k == SlotKind::Uplink) {
                if (frame.duplex == Duplex::FddDownlink) {
                    report("fdd-downlink-no-uplink", sfi, sli, "Uplink slot in FDD downlink frame");
                }
                if (frame.tr_active) {
                    report("tr-no-uplink", sfi, sli, "Uplink slot while TR mode is active");
                }
            }
            if (k == SlotKind::Downlink && frame.duplex == Duplex::FddUplink) {
                report("fdd-uplink-no-downlink", sfi, sli, "Downlink slot in FDD uplink frame");
            }
            if (k == SlotKind::FreqSwitch0 || k == SlotKind::FreqSwitch1) {
                ++freq_switch;
                if (frame.duplex != Duplex::FddUplink) {
                    report("freq-switch-placement", sfi, sli,
                           "frequency-switching slot outside an FDD uplink frame");
                } else if ((k == SlotKind::FreqSwitch1) != frame.tr_active) {
                    report("freq-switch-state", sfi, sli,
                           fmt::format("{} does not match tr_active={}", to_string(k),
                                       frame.tr_active));
                }
            }
            if (k == SlotKind::Hold || k == SlotKind::Release) {
                has_tr_slot = true;
                (k == SlotKind::Hold ? hold : release) += 1;
                if (frame.duplex != Duplex::Tdd) {
                    report("hold-release-placement", sfi, sli, "Hold/Release slot outside a TDD frame");
                } else if ((k == SlotKind::Hold) != frame.tr_active) {
                    report("hold-release-state", sfi, sli,
                           fmt::format("{} does not match tr_active={}", to_string(k),
                                       frame.tr_active));
                }
            }
        }
        if (has_tr_slot) {
            superframes.push_back(sfi);
        }
    }

    if (frame.duplex == Duplex::FddUplink && freq_switch != 1) {
        report("freq-switch-count", -1, -1,
               fmt::format("{} frequency-switching slots, expected 1", freq_switch));
    }
    if (frame.duplex == Duplex::Tdd) {
        if (superframes.size() > 1) {
            report("superframe-count", superframes[1], -1,
                   fmt::format("{} subframes carry Hold/Release, at most 1 allowed",
                               superframes.size()));
        }
        if (hold + release != 1) {
            report("hold-release-exclusive", superframes.empty() ? -1 : superframes.front(), -1,
                   fmt::format("{} Hold and {} Release slots, expected exactly one in total", hold,
                               release));
        }
    }
    return out;
}

int SlotCensus::total() const noexcept {
    int t = 0;
    for (int c : counts_) {
        t += c;
    }
    return t;
}

SlotCensus slot_census(const RadioFrame& frame) {
    SlotCensus c;
    for (const auto& sf : frame.subframes) {
        for (SlotKind k : sf) {
            ++c[k];
        }
    }
    return c;
}

std::string dump_frame(const RadioFrame& frame) {
    std::string out;
    for (const auto& sf : frame.subframes) {
        for (SlotKind k : sf) {
            out += slot_code(k);
        }
        out += '\n';
    }
    return out;
}

}  // namespace trsim::frames
