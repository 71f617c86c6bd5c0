#include "zonal/parallel.hpp"

#include <cstdlib>
#include <string>

namespace zonal {

int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0)
        hw = 1;
    if (const char* env = std::getenv("ZONAL_STABILITY_THREADS")) {
        try {
            const int requested = std::stoi(env);
            if (requested > 0)
                return requested;
        } catch (const std::exception&) {
        }
    }
    return hw;
}

}  // namespace zonal
