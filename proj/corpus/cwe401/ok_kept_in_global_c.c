char *cwe401_ok_kept_in_global_c_keep;

int cwe401_ok_kept_in_global_c_main(int c) {
  char *p = calloc(4, 4);
  cwe401_ok_kept_in_global_c_keep = p;
  return 0;
}
