int cwe416_bug_inside_worker_c_work(int n) {
  int *v = calloc(4, 4);
  free(v);
  v[1] = n;
  return 0;
}

int cwe416_bug_inside_worker_c_main(int c) {
  return cwe416_bug_inside_worker_c_work(c);
}
