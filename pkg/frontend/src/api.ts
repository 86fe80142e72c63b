/**
 * Typed client for the registry HTTP API. Every number shown in the UI
 * comes from these responses; the console itself never computes ratings.
 */

export interface CollectionInfo {
  id: string;
  name: string;
  description: string;
  uploader: string;
  created: string;
  service_count: number;
}

export interface ServiceSummary {
  id: string;
  name: string;
  filename: string;
  created: string;
  operation_count: number;
}

export interface OntologyInfo {
  id: string;
  name: string;
  filename: string;
  created: string;
  class_count: number;
}

export interface ClassNode {
  iri: string;
  name: string;
  children: ClassNode[];
}

export interface Justification {
  requested_concept: string;
  side: 'input' | 'output';
  matched_element_name: string;
  matched_element_kind: string;
  matched_annotation: string | null;
  pair_rating: number;
  match_case: string;
}

export interface MatchRow {
  service: string;
  service_name: string;
  interface: string;
  operation: string;
  rating: number;
  tier: 'NameMatch' | 'Normal';
  justifications: Justification[];
}

export interface MatchRequestBody {
  collection_id: string;
  strategy: string;
  sim_algorithm: string;
  inputs: string[];
  outputs: string[];
  weight: number;
  rating_threshold: number;
}

export interface ElementNodeView {
  local_name: string;
  node_kind: string;
  annotations: string[];
  depth: number;
}

export interface ServiceTree {
  id: string;
  service_name: string;
  warnings: string[];
  interfaces: {
    name: string;
    operations: { name: string; input_tree: ElementNodeView[]; output_tree: ElementNodeView[] }[];
  }[];
}

export interface FieldError {
  field: string;
  message: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly errors: FieldError[],
  ) {
    super(errors.map((e) => `${e.field}: ${e.message}`).join('; ') || `HTTP ${status}`);
  }
}

type FetchLike = typeof fetch;

export class RegistryClient {
  constructor(
    readonly baseUrl: string = '',
    private readonly fetchFn: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      let errors: FieldError[] = [];
      try {
        const body = await response.json();
        if (Array.isArray(body?.errors)) errors = body.errors;
      } catch {
        // non-JSON error body; fall through with the bare status
      }
      throw new ApiError(response.status, errors);
    }
    return (await response.json()) as T;
  }

  private postJson<T>(path: string, body: unknown, signal?: AbortSignal): Promise<T> {
    return this.request<T>(path, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
      signal,
    });
  }

  private postFile<T>(path: string, file: File | Blob, filename: string): Promise<T> {
    const form = new FormData();
    form.append('file', file, filename);
    return this.request<T>(path, { method: 'POST', body: form });
  }

  healthz(): Promise<{ status: string }> {
    return this.request('/healthz');
  }

  listCollections(): Promise<CollectionInfo[]> {
    return this.request('/collections');
  }

  createCollection(name: string, description = '', uploader = ''): Promise<{ id: string }> {
    return this.postJson('/collections', { name, description, uploader });
  }

  listServices(collectionId: string): Promise<ServiceSummary[]> {
    return this.request(`/collections/${encodeURIComponent(collectionId)}/services`);
  }

  serviceTree(serviceId: string): Promise<ServiceTree> {
    return this.request(`/services/${encodeURIComponent(serviceId)}`);
  }

  uploadServiceFile(collectionId: string, file: File | Blob, filename: string): Promise<{ id: string }> {
    return this.postFile(`/collections/${encodeURIComponent(collectionId)}/services`, file, filename);
  }

  uploadServiceUrl(collectionId: string, url: string): Promise<{ id: string }> {
    return this.postJson(`/collections/${encodeURIComponent(collectionId)}/services`, { url });
  }

  listOntologies(): Promise<OntologyInfo[]> {
    return this.request('/ontologies');
  }

  ontologyClasses(ontologyId: string): Promise<ClassNode[]> {
    return this.request(`/ontologies/${encodeURIComponent(ontologyId)}/classes`);
  }

  uploadOntologyFile(file: File | Blob, filename: string): Promise<{ id: string }> {
    return this.postFile('/ontologies', file, filename);
  }

  uploadOntologyUrl(url: string): Promise<{ id: string }> {
    return this.postJson('/ontologies', { url });
  }

  runMatch(body: MatchRequestBody, signal?: AbortSignal): Promise<MatchRow[]> {
    return this.postJson('/match', body, signal);
  }
}
