#include "tmbec/runner/app.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "tmbec/errors.hpp"
#include "tmbec/runner/scenarios.hpp"

namespace tmbec::runner {

int run_command(const std::string& command, const std::filesystem::path& config_path,
                const std::filesystem::path& out_dir, std::ostream& err) {
    std::string bytes;
    {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) {
            err << "error: cannot open config file " << config_path.string() << "\n";
            return kExitConfig;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        bytes = buf.str();
    }
    try {
        const RunConfig config = parse_config(bytes, config_path.string());
        Output out;
        if (command == "evolve") out = cmd_evolve(config);
        else if (command == "cat") out = cmd_cat(config);
        else if (command == "husimi") out = cmd_husimi(config);
        else if (command == "decohere") out = cmd_decohere(config);
        else if (command == "purify") out = cmd_purify(config);
        else {
            err << "error: unknown subcommand '" << command << "'\n";
            return kExitUsage;
        }
        out.meta["config_sha256"] = sha256_hex(bytes);
        out.meta["config_path"] = config_path.filename().string();
        try {
            write_output(out_dir, out);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kExitIo;
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ResourceLimitError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}

} // namespace tmbec::runner
