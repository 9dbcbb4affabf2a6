import { ApiClient } from "./api.js";
import { App, type Surface } from "./app.js";
import type { Ctx2D, ImageDataLike } from "./render.js";

function surfaceOf(canvas: HTMLCanvasElement): Surface {
  const native = canvas.getContext("2d");
  if (!native) throw new Error("canvas 2d context unavailable");
  // Ctx2D is a structural subset of CanvasRenderingContext2D except for
  // putImageData, which needs a real ImageData instance in browsers.
  const ctx = new Proxy(native, {
    get(target, prop, receiver) {
      if (prop === "putImageData") {
        return (image: ImageDataLike, dx: number, dy: number) => {
          const data = new ImageData(image.data, image.width, image.height);
          const scale = Math.max(
            1,
            Math.floor(Math.min(canvas.width / image.width, (canvas.height - 20) / image.height)),
          );
          const off = document.createElement("canvas");
          off.width = image.width;
          off.height = image.height;
          off.getContext("2d")!.putImageData(data, 0, 0);
          target.imageSmoothingEnabled = false;
          target.drawImage(off, dx, dy, image.width * scale, image.height * scale);
        };
      }
      const value = Reflect.get(target, prop, target);
      return typeof value === "function" ? value.bind(target) : value;
    },
    set(target, prop, value) {
      Reflect.set(target, prop, value);
      return true;
    },
  }) as unknown as Ctx2D;
  return { ctx, width: canvas.width, height: canvas.height };
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

async function boot(): Promise<void> {
  const status = el<HTMLDivElement>("status");
  const apcpCanvas = el<HTMLCanvasElement>("apcp");
  const adpCanvas = el<HTMLCanvasElement>("adp");
  const bpcpCanvas = el<HTMLCanvasElement>("bpcp");
  const cspCanvas = el<HTMLCanvasElement>("csp");
  const zSlider = el<HTMLInputElement>("z-slider");
  const zLabel = el<HTMLSpanElement>("z-label");
  const varSelect = el<HTMLSelectElement>("variable");
  const rescaleToggle = el<HTMLInputElement>("rescale");
  const clearBrushButton = el<HTMLButtonElement>("clear-brush");

  const client = new ApiClient("");
  const app = new App(client, {
    apcp: surfaceOf(apcpCanvas),
    adp: surfaceOf(adpCanvas),
    bpcp: surfaceOf(bpcpCanvas),
    csp: surfaceOf(cspCanvas),
    notice: (message) => {
      status.textContent = message;
    },
  });

  status.textContent = "loading dataset metadata...";
  try {
    await app.start();
  } catch (err) {
    status.textContent = `server not ready: ${err instanceof Error ? err.message : err}`;
    setTimeout(boot, 1500);
    return;
  }
  const meta = app.store.meta;
  status.textContent = `loaded: ${meta.members.length} members, ${meta.variables.length} variables, t=${meta.time_index}`;

  zSlider.max = String(meta.grid_dims.nz - 1);
  zSlider.value = "0";
  for (const variable of meta.variables) {
    const option = document.createElement("option");
    option.value = variable.name;
    option.textContent = `${variable.name} (${variable.unit})`;
    varSelect.appendChild(option);
  }

  apcpCanvas.addEventListener("click", (event) => {
    const rect = apcpCanvas.getBoundingClientRect();
    app.onApcpClick(event.clientX - rect.left, event.clientY - rect.top);
  });

  zSlider.addEventListener("input", () => {
    const z = Number(zSlider.value);
    zLabel.textContent =
      meta.altitudes !== null ? `z=${z} (${meta.altitudes[z]}m)` : `z=${z}`;
    app.store.setZIndex(z);
  });

  varSelect.addEventListener("change", () => app.store.setCspVariable(varSelect.value));
  rescaleToggle.addEventListener("change", () =>
    app.store.setAdpRescale(rescaleToggle.checked),
  );
  clearBrushButton.addEventListener("click", () => app.store.clearBrush());

  // vertical drag on a BPCP axis brushes that variable
  let dragging: { axis: number; y0: number } | null = null;
  bpcpCanvas.addEventListener("pointerdown", (event) => {
    const payload = app.payloads.bpcp;
    if (!payload) return;
    const rect = bpcpCanvas.getBoundingClientRect();
    const axis = app.bpcpView.axisAt(payload, event.clientX - rect.left);
    if (axis !== null) dragging = { axis, y0: event.clientY - rect.top };
  });
  bpcpCanvas.addEventListener("pointerup", (event) => {
    const payload = app.payloads.bpcp;
    if (!payload || !dragging) return;
    const rect = bpcpCanvas.getBoundingClientRect();
    const names = app.bpcpView.axisNames(payload);
    const v0 = app.bpcpView.valueAt(payload, dragging.y0);
    const v1 = app.bpcpView.valueAt(payload, event.clientY - rect.top);
    app.store.setBrush(names[dragging.axis], Math.min(v0, v1), Math.max(v0, v1));
    dragging = null;
  });
}

boot();
