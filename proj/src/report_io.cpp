// SPDX-License-Identifier: Apache-2.0
//
// nlbeam: line-spectrum simulator for beamformed transmitter distortion
// Copyright (C) 2026 The nlbeam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "nlbeam/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace nlbeam::scenario
{
    namespace
    {
        void append_value(std::string &out, double x)
        {
            if (std::isinf(x))
            {
                out += x < 0 ? "-inf" : "inf";
                return;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.12g", x);
            out += buf;
        }

        void write_file(const std::filesystem::path &path, const std::string &text)
        {
            std::ofstream f(path, std::ios::binary | std::ios::trunc);
            if (!f)
                throw std::runtime_error("cannot open " + path.string() + " for writing");
            f.write(text.data(), static_cast<std::streamsize>(text.size()));
            f.close();
            if (!f)
                throw std::runtime_error("failed writing " + path.string());
        }
    }

    std::string pattern_csv(const Pattern &p)
    {
        std::string out = "tau_rx_seconds,power_linear,power_db\n";
        out.reserve(out.size() + p.sweep.size() * 56);
        for (const auto &pt : p.sweep)
        {
            append_value(out, pt.tau);
            out += ',';
            append_value(out, pt.power);
            out += ',';
            append_value(out, to_db(pt.power));
            out += '\n';
        }
        return out;
    }

    void emit(const ReportBundle &bundle, const std::filesystem::path &out_dir, bool write_report)
    {
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec)
            throw std::runtime_error("cannot create output directory " + out_dir.string() + ": " + ec.message());

        for (const auto &p : bundle.patterns)
            write_file(out_dir / ("pattern_" + std::to_string(p.pattern.freq_index) + ".csv"), pattern_csv(p.pattern));
        for (const auto &c : bundle.model_contrast)
            if (c.report.has_distortion)
                write_file(out_dir / ("baseline_pattern_" + std::to_string(c.report.freq_index) + ".csv"),
                           pattern_csv(c.baseline_pattern));

        if (!write_report)
            return;

        const std::filesystem::path final_path = out_dir / "report.json";
        const std::filesystem::path temp_path = out_dir / "report.json.tmp";
        write_file(temp_path, bundle_to_json(bundle).dump(2) + "\n");
        std::filesystem::rename(temp_path, final_path, ec);
        if (ec)
        {
            std::filesystem::remove(temp_path);
            throw std::runtime_error("cannot finalize " + final_path.string() + ": " + ec.message());
        }
    }
}
