int cwe416_bug_inside_worker_m_work(int n) {
  int *v = malloc(16);
  free(v);
  v[1] = n;
  return 0;
}

int cwe416_bug_inside_worker_m_main(int c) {
  return cwe416_bug_inside_worker_m_work(c);
}
