int cwe415_bug_int_buffer_c_main(int c) {
  int *v = calloc(4, 4);
  v[0] = c;
  free(v);
  c = c + 1;
  free(v);
  return c;
}
